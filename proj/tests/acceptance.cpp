// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rlr/approx.hpp"
#include "rlr/apps.hpp"
#include "rlr/exact_mc.hpp"
#include "rlr/specfun.hpp"

using namespace rlr;

namespace {

constexpr std::size_t kN = 100000;

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (cond ? "" : " [x]");
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

struct KsPair {
  EmpiricalDist exact;
  EmpiricalDist approx;
  double ks;
};

KsPair compare(const ScenarioSpec& spec, std::uint64_t seed) {
  const auto what = spec.is_overlap() ? Quantity::Overlap : Quantity::Ell1;
  EmpiricalDist e = accumulate(RngStream(seed, 1), spec, kN, what);
  EmpiricalDist a = accumulate_approx(RngStream(seed, 2), spec, kN);
  const double ks = ks_distance(e, a);
  return {std::move(e), std::move(a), ks};
}

void ac1(Criterion& c) {
  const auto spec = ScenarioSpec::case1(4, 10, 1.0, 0.1);
  const KsPair r = compare(spec, 101);
  c.check(r.ks < 0.015, "KS=" + fmt(r.ks) + " < 0.015");
  const double closed = case_moments(spec, MomentSource::Printed).mean;
  const double z = std::fabs(r.exact.mean() - closed) / r.exact.standard_error();
  c.check(z < 3.0, "exact mean " + fmt(r.exact.mean(), 7) + " vs " + fmt(closed, 7) + " (" + fmt(z, 3) + " SE)");
}

void ac2(Criterion& c) {
  const auto spec = ScenarioSpec::case2(4, 10, 5.0, 0.1);
  const KsPair r = compare(spec, 102);
  c.check(r.ks < 0.015, "KS=" + fmt(r.ks) + " < 0.015");
  const MomentPair repr = case_moments(spec, MomentSource::Representation);
  const MomentPair printed = case_moments(spec, MomentSource::Printed);
  const double z = std::fabs(r.approx.mean() - repr.mean) / r.approx.standard_error();
  c.check(z < 3.0, "representation mean " + fmt(repr.mean, 7) + " vs MC " + fmt(r.approx.mean(), 7) + " (" +
                       fmt(z, 3) + " SE)");
  c.detail << "; logged: printed mean " << fmt(printed.mean, 6) << ", exact-oracle mean " << fmt(r.exact.mean(), 6);
}

void ac3(Criterion& c) {
  const KsPair r3 = compare(ScenarioSpec::case3(4, 10, 20, 10.0), 103);
  c.check(r3.ks < 0.02, "Case3 KS=" + fmt(r3.ks) + " < 0.02");
  const KsPair r4 = compare(ScenarioSpec::case4(4, 10, 20, 50.0), 104);
  c.check(r4.ks < 0.02, "Case4 KS=" + fmt(r4.ks) + " < 0.02");
  const FMixtureParams f = FMixtureParams::case34(4, 10, 20);
  const double f_mean = 11.0 * f.a1 * f.c1 / (f.c1 - 2.0) + f.a2 * f.c2 / (f.c2 - 2.0) + f.a3;
  const double z = std::fabs(r3.approx.mean() - f_mean) / r3.approx.standard_error();
  c.check(z < 3.0, "Case3 sampler mean " + fmt(r3.approx.mean(), 6) + " vs F-mean " + fmt(f_mean, 6) + " (" +
                       fmt(z, 3) + " SE)");
  c.detail << "; logged: Case3 exact-oracle mean " << fmt(r3.exact.mean(), 6);
}

void ac4(Criterion& c) {
  const KsPair r = compare(ScenarioSpec::case5(3, 4, 20, 0.8), 105);
  c.check(r.ks < 0.02, "KS=" + fmt(r.ks) + " < 0.02");

  const int p = 3, q = 4, n = 20;
  const double rho = 0.8;
  const FMixtureParams f = FMixtureParams::case5(p, q, n);
  const double scale = rho * rho / (1.0 - rho * rho);
  const std::size_t draws = 1000000;
  const int bins = 50;
  const double x_max = 12.0;
  RngStream rng(105, 3);
  std::vector<double> counts(bins, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    const auto k = static_cast<int>(sample_fchi(rng, f.b1, f.c1, scale, 2.0 * n) / x_max * bins);
    if (k < bins) counts[k] += 1.0;
  }
  double worst = 0.0;
  for (int k = 0; k < bins; ++k) {
    const double prob = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double x) { return fchi_density(x, p, q, n, rho).value; }, x_max * k / bins, x_max * (k + 1) / bins);
    worst = std::max(worst, std::fabs(counts[k] / draws - prob) / std::sqrt(prob * (1.0 - prob) / draws));
  }
  c.check(worst < 3.0, "histogram max " + fmt(worst, 3) + " SE < 3 (50 bins)");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double total = integrator.integrate([&](double x) { return fchi_density(x, p, q, n, rho).value; });
  c.check(std::fabs(total - 1.0) < 1e-6, "integral 1" + std::string(total >= 1.0 ? "+" : "-") + fmt(std::fabs(total - 1.0), 2));
}

void ac5(Criterion& c) {
  const KsPair r6 = compare(ScenarioSpec::overlap1(5, 20, 1.0, 0.2), 106);
  c.check(r6.ks < 0.02, "lambda-spike KS=" + fmt(r6.ks) + " < 0.02");
  const KsPair r7 = compare(ScenarioSpec::overlap2(5, 20, 10.0, 0.2), 107);
  c.check(r7.ks < 0.02, "omega-spike KS=" + fmt(r7.ks) + " < 0.02");
}

void ac6(Criterion& c) {
  RngStream rng(108, 0);
  double lo = 1e9, hi = -1e9;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + trial % 4;
    PerturbationInstance inst;
    inst.z = 1.0 + 4.0 * rng.uniform();
    inst.b = sample_complex_gaussian_vector(rng, k, 1.0);
    ComplexMatrix a(k, k + 1);
    for (int j = 0; j <= k; ++j) a.col(j) = sample_complex_gaussian_vector(rng, k, 1.0);
    inst.Z = a * a.adjoint();
    const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
    double mx = 0, my = 0;
    std::vector<double> xs, ys;
    for (double e : eps) {
      inst.epsilon = e;
      xs.push_back(std::log(e));
      ys.push_back(std::log(std::fabs(hermitian_leading_eig(perturbation_matrix(inst)).value - perturbation_ell1(inst, 4))));
      mx += xs.back() / 4, my += ys.back() / 4;
    }
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 4; ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    lo = std::min(lo, sxy / sxx);
    hi = std::max(hi, sxy / sxx);
  }
  c.check(lo >= 5.5 && hi <= 6.5, "slopes in [" + fmt(lo) + ", " + fmt(hi) + "] within 6 +- 0.5 (20 instances)");
}

void ac7(Criterion& c) {
  RicianSpec ch;
  ch.K = 2.0;
  ch.sigma_H = 0.3;
  ch.sigma_n = 1.0;
  ch.omega_D = 5.0;
  ch.mu_min = 54.0;
  const RngStream rng(109, 0);
  const AntennaSplit ncx = optimal_antenna_split(8, ch, OutageMethod::NoncentralChisq, 0, rng);
  const AntennaSplit exact = optimal_antenna_split(8, ch, OutageMethod::Exact, kN, rng);
  c.check(ncx.best_n_T == 4, "N=8 ncx2 best n_T=" + std::to_string(ncx.best_n_T));
  c.check(exact.best_n_T == 4, "N=8 exact best n_T=" + std::to_string(exact.best_n_T));
  double gap = 0.0;
  for (std::size_t i = 0; i < ncx.outage.size(); ++i) gap = std::max(gap, std::fabs(ncx.outage[i] - exact.outage[i]));
  c.check(gap < 0.02, "curve max |ncx2 - exact| " + fmt(gap, 3) + " < 0.02 (mu_min=54, outage at n_T=4 " +
                          fmt(ncx.outage[3], 3) + ")");
  ch.mu_min = 68.0;
  const AntennaSplit n9 = optimal_antenna_split(9, ch, OutageMethod::NoncentralChisq, 0, rng);
  const AntennaSplit n9x = optimal_antenna_split(9, ch, OutageMethod::Exact, kN, rng);
  c.check(n9.best_n_T == 4 && n9x.best_n_T == 4,
          "N=9 split (" + std::to_string(n9.best_n_T) + "," + std::to_string(9 - n9.best_n_T) + ") ncx2, (" +
              std::to_string(n9x.best_n_T) + "," + std::to_string(9 - n9x.best_n_T) + ") exact");
}

void ac8(Criterion& c) {
  const int m = 4, n_H = 10, n_E = 10000;
  const FMixtureParams f = FMixtureParams::case34(m, n_H, n_E);
  RngStream a(110, 0), b(110, 1);
  std::vector<double> lhs(kN), rhs(kN);
  for (auto& x : lhs) x = n_E * approx_case34(a, f, 2.0, 0.0);
  for (auto& x : rhs) x = sample_chisq(b, 2.0 * n_H) + 0.5 * sample_chisq(b, 2.0 * m - 2.0);
  const double ks_lead = ks_distance(EmpiricalDist(std::move(lhs)), EmpiricalDist(std::move(rhs)));
  c.check(ks_lead < 0.02, "n_E=1e4 vs leading terms KS=" + fmt(ks_lead) + " < 0.02");

  const EmpiricalDist c5 = accumulate(RngStream(110, 2), ScenarioSpec::case5(3, 4, 20, 0.0), kN, Quantity::Ell1);
  const EmpiricalDist c3 = accumulate(RngStream(110, 3), ScenarioSpec::case3(3, 4, 16, 0.0), kN, Quantity::Ell1);
  const double ks_null = ks_distance(c5, c3);
  c.check(ks_null < 0.01, "rho=0 Case5 vs null Case3 KS=" + fmt(ks_null) + " < 0.01");

  double worst = 0.0;
  RngStream s1(110, 4), s2(110, 4);
  for (int i = 0; i < 10000; ++i) {
    const double dof = 0.5 + (i % 40);
    const double x = sample_noncentral_chisq(s1, dof, 0.0), y = sample_chisq(s2, dof);
    worst = std::max(worst, std::fabs(x - y) / std::max(1.0, std::fabs(y)));
  }
  RngStream s3(110, 5), s4(110, 5);
  for (int i = 0; i < 10000; ++i) {
    const double x = approx_case2(s3, 4, 10, 0.0, 0.3), y = approx_case1(s4, 4, 10, 0.0, 0.3);
    worst = std::max(worst, std::fabs(x - y) / std::max(1.0, std::fabs(y)));
    const double u = approx_overlap(s3, 5, 20, OverlapSpike::Omega, 0.0, 0.3);
    const double v = approx_overlap(s4, 5, 20, OverlapSpike::Lambda, 0.0, 0.3);
    worst = std::max(worst, std::fabs(u - v));
  }
  for (double dof : {1.0, 4.0, 17.0, 40.0}) {
    for (double t = 0.0; t <= 100.0; t += 0.5) {
      worst = std::max(worst, std::fabs(noncentral_chisq_cdf(dof, 0.0, t) - chisq_cdf(dof, t)));
      const double x = t / 10.0;
      const double central_f = reg_inc_beta(0.5 * dof, 6.0, dof * x / (dof * x + 12.0));
      worst = std::max(worst, std::fabs(f_cdf(dof, 12.0, x, 0.0) - central_f));
    }
  }
  c.check(worst <= 1e-12, "delta=0 max deviation " + fmt(worst, 3) + " <= 1e-12");
}

void ac9(Criterion& c) {
  const double bound = 1.63 / std::sqrt(static_cast<double>(kN));
  double worst = 0.0;
  int failing = 0;
  std::uint64_t cell = 0;
  for (double dof : {2.0, 5.0, 10.0, 20.0, 40.0}) {
    for (double nc : {0.0, 1.0, 10.0, 1000.0}) {
      RngStream rng = RngStream(111, 0).substream(cell++);
      std::vector<double> xs(kN);
      for (auto& x : xs) x = sample_noncentral_chisq(rng, dof, nc);
      const double ks = ks_distance(EmpiricalDist(std::move(xs)),
                                    [&](double t) { return noncentral_chisq_cdf(dof, nc, t); });
      worst = std::max(worst, ks);
      failing += ks >= bound;
    }
  }
  c.check(failing == 0, "ncx2 KS max " + fmt(worst) + " < " + fmt(bound) + " on 20 cells");

  double id_err = 0.0;
  for (double z : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
    id_err = std::max(id_err, std::fabs(gauss_2f1(1.0, 1.0, 2.0, z) / (-std::log1p(-z) / z) - 1.0));
    id_err = std::max(id_err, std::fabs(gauss_2f1(0.5, 0.5, 1.5, z * z) / (std::asin(z) / z) - 1.0));
    id_err = std::max(id_err, std::fabs(gauss_2f1(2.0, 3.0, 3.0, z) / std::pow(1.0 - z, -2.0) - 1.0));
  }
  id_err = std::max(id_err, std::fabs(gauss_2f1(1.0, 1.0, 2.0, 0.5) - 2.0 * std::log(2.0)));
  id_err = std::max(id_err, std::fabs(gauss_2f1(2.0, 5.0, 5.0, 0.25) - 16.0 / 9.0));
  c.check(id_err < 1e-10, "2F1 identities max rel err " + fmt(id_err, 3));

  bool monotone = true;
  for (double dof : {1.0, 6.0, 30.0}) {
    for (double nc : {0.0, 0.5, 20.0, 500.0}) {
      double p1 = 0, p2 = 0, p3 = 0;
      for (double t = 0.0; t <= 1200.0; t += 0.5) {
        const double v1 = noncentral_chisq_cdf(dof, nc, t);
        const double v2 = f_cdf(dof, 12.0, t / 50.0, nc);
        const double v3 = chisq_cdf(dof, t);
        monotone = monotone && v1 >= p1 - 1e-15 && v2 >= p2 - 1e-15 && v3 >= p3 - 1e-15;
        monotone = monotone && v1 <= 1.0 && v2 <= 1.0 && v3 <= 1.0;
        p1 = v1, p2 = v2, p3 = v3;
      }
    }
  }
  c.check(monotone, std::string("CDF grids ") + (monotone ? "monotone and in [0,1]" : "not monotone"));
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

void ac10(Criterion& c) {
  const std::vector<std::string> commands = {
      "sample --case 3 --n-draws 20000",
      "compare --case 5 --rho 0.8 --n-draws 20000",
      "moments --case 2 --omega 5 --sigma 0.1 --n-draws 20000",
      "power --case 4 --snr 20 --mu 1,2,3,4 --n-draws 20000",
      "outage --N 8 --mu-min 54 --method exact --n-draws 20000",
      "overlap --spike omega --omega 10 --sigma 0.2 --n-draws 20000",
      "density --rho 0.8 --grid-points 201",
  };
  int identical = 0;
  for (const auto& cmd : commands) {
    const std::string base = std::string(RLR_CLI_PATH) + " " + cmd + " --seed 2024";
    int s1 = 0, s2 = 0, s3 = 0;
    const std::string a = capture(base + " --threads 1", s1);
    const std::string b = capture(base + " --threads 1", s2);
    const std::string d = capture(base + " --threads 4", s3);
    const bool same = s1 == 0 && s2 == 0 && s3 == 0 && !a.empty() && a == b && a == d;
    identical += same;
    if (!same) c.detail << (c.detail.tellp() > 0 ? "; " : "") << "differs: " << cmd;
    c.ok = c.ok && same;
  }
  c.detail << (c.detail.tellp() > 0 ? "; " : "") << identical << "/" << commands.size()
           << " commands byte-identical (2 runs, threads 1 and 4)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"AC1  Case1 oracle agreement", ac1},
      {"AC2  Case2 oracle agreement", ac2},
      {"AC3  Case3/Case4 oracle agreement", ac3},
      {"AC4  Case5 oracle agreement and F^chi density", ac4},
      {"AC5  overlap laws", ac5},
      {"AC6  perturbation series order", ac6},
      {"AC7  antenna split and outage curve", ac7},
      {"AC8  degeneration checks", ac8},
      {"AC9  numerics suite", ac9},
      {"AC10 CLI reproducibility", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !c.ok;
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << name << " (" << fmt(secs, 3) << " s): " << c.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
