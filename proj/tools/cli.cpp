// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlr/approx.hpp"
#include "rlr/apps.hpp"
#include "rlr/empirical.hpp"
#include "rlr/error.hpp"
#include "rlr/exact_mc.hpp"
#include "rlr/specfun.hpp"

namespace rlr::cli {

namespace {

// Fixed stream ids so exact and approximate samples never share a stream.
constexpr std::uint64_t kExactStream = 1;
constexpr std::uint64_t kApproxStream = 2;
constexpr std::uint64_t kAppsStream = 3;

struct Flags {
  std::uint64_t seed = 0;
  int threads = 1;
  std::size_t n_draws = 100000;
  std::string format = "csv";
  std::string output_path;

  std::string scenario = "1";
  int m = 4;
  int nh = 10;
  int ne = 20;
  double lambda = 1.0;
  double omega = 5.0;
  double sigma = 1.0;
  int p = 3;
  int q = 4;
  int n = 20;
  double rho = 0.5;

  std::string method;
  std::string spike = "lambda";
  int grid_points = 101;
  double x_max = 5.0;

  std::vector<double> snr{100.0};
  std::vector<double> mu{1.0};
  double pfa = 0.0;

  double K = 2.0;
  double sigma_h = 0.3;
  double sigma_n = 1.0;
  double omega_d = 5.0;
  double mu_min = 1.0;
  double nt = 0.0;
  double nr = 0.0;
  int N = 0;
  std::string sweep_nt;
};

ScenarioSpec scenario_from(const Flags& f, const std::string& which) {
  if (which == "1") return ScenarioSpec::case1(f.m, f.nh, f.lambda, f.sigma);
  if (which == "2") return ScenarioSpec::case2(f.m, f.nh, f.omega, f.sigma);
  if (which == "3") return ScenarioSpec::case3(f.m, f.nh, f.ne, f.lambda);
  if (which == "4") return ScenarioSpec::case4(f.m, f.nh, f.ne, f.omega);
  if (which == "5") return ScenarioSpec::case5(f.p, f.q, f.n, f.rho);
  if (which == "overlap1") return ScenarioSpec::overlap1(f.m, f.nh, f.lambda, f.sigma);
  if (which == "overlap2") return ScenarioSpec::overlap2(f.m, f.nh, f.omega, f.sigma);
  throw ParameterError("unknown case '" + which + "'");
}

Quantity quantity_of(const ScenarioSpec& s) { return s.is_overlap() ? Quantity::Overlap : Quantity::Ell1; }

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw ParameterError("bad range '" + text + "': expected a:b or a:b:step");
    }
    parts.push_back(v);
  }
  if (parts.size() < 2 || parts.size() > 3) throw ParameterError("bad range '" + text + "': expected a:b or a:b:step");
  const double step = parts.size() == 3 ? parts[2] : 1.0;
  if (!(step > 0.0) || parts[1] < parts[0]) throw ParameterError("bad range '" + text + "'");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * step);
  return out;
}

Table compare_table(const Flags& f, const ScenarioSpec& spec) {
  if (f.grid_points < 2) throw ParameterError("--grid-points must be >= 2");
  const auto what = quantity_of(spec);
  const EmpiricalDist exact = accumulate(RngStream(f.seed, kExactStream), spec, f.n_draws, what, f.threads);
  const EmpiricalDist approx = accumulate_approx(RngStream(f.seed, kApproxStream), spec, f.n_draws, f.threads);
  Table t;
  t.columns = {"kind", "x", "exact_cdf", "approx_cdf", "ks", "n_draws", "seed"};
  const double lo = std::min(exact.samples().front(), approx.samples().front());
  const double hi = std::max(exact.samples().back(), approx.samples().back());
  for (int i = 0; i < f.grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (f.grid_points - 1);
    t.rows.push_back({std::string("cdf"), x, exact.cdf(x), approx.cdf(x), {}, {}, {}});
  }
  t.rows.push_back({std::string("summary"), {}, {}, {}, ks_distance(exact, approx),
                    static_cast<std::int64_t>(f.n_draws), std::to_string(f.seed)});
  return t;
}

Table sample_table(const Flags& f) {
  const ScenarioSpec spec = scenario_from(f, f.scenario);
  std::vector<double> draws;
  if (f.method == "exact") {
    draws = exact_draws(RngStream(f.seed, kExactStream), spec, f.n_draws, quantity_of(spec), f.threads);
  } else {
    draws = approx_draws(RngStream(f.seed, kApproxStream), spec, f.n_draws, f.threads);
  }
  Table t;
  t.columns = {"index", "value"};
  for (std::size_t i = 0; i < draws.size(); ++i) t.rows.push_back({static_cast<std::int64_t>(i), draws[i]});
  return t;
}

Table moments_table(const Flags& f) {
  const ScenarioSpec spec = scenario_from(f, f.scenario);
  if (spec.tag != Scenario::Case1 && spec.tag != Scenario::Case2) {
    throw ParameterError("moments: --case must be 1 or 2");
  }
  Table t;
  t.columns = {"source", "mean", "variance", "mean_stderr"};
  const MomentPair printed = case_moments(spec, MomentSource::Printed);
  const MomentPair repr = case_moments(spec, MomentSource::Representation);
  t.rows.push_back({std::string("printed"), printed.mean, printed.variance, {}});
  t.rows.push_back({std::string("representation"), repr.mean, repr.variance, {}});
  const EmpiricalDist approx = accumulate_approx(RngStream(f.seed, kApproxStream), spec, f.n_draws, f.threads);
  const EmpiricalDist exact =
      accumulate(RngStream(f.seed, kExactStream), spec, f.n_draws, Quantity::Ell1, f.threads);
  t.rows.push_back({std::string("approx_mc"), approx.mean(), approx.variance(), approx.standard_error()});
  t.rows.push_back({std::string("exact_mc"), exact.mean(), exact.variance(), exact.standard_error()});
  return t;
}

Table power_table(const Flags& f) {
  DetectionSpec d;
  if (f.scenario == "1") d.scenario = Scenario::Case1;
  else if (f.scenario == "2") d.scenario = Scenario::Case2;
  else if (f.scenario == "3") d.scenario = Scenario::Case3;
  else if (f.scenario == "4") d.scenario = Scenario::Case4;
  else throw ParameterError("power: --case must be 1, 2, 3 or 4");
  d.m = f.m;
  d.n_H = f.nh;
  d.n_E = f.ne;
  d.sigma = f.sigma;
  if (f.snr.size() > 1 && f.mu.size() > 1) throw ParameterError("power: sweep either --snr or --mu, not both");
  d.snr = f.snr.front();
  d.threshold_mu = f.mu.front();
  const RngStream rng(f.seed, kAppsStream);
  if (f.pfa > 0.0) {
    if (f.mu.size() > 1) throw ParameterError("power: --pfa replaces --mu");
    d.threshold_mu = calibrate_threshold(d, f.pfa, f.n_draws, rng.substream(1'000'000), f.threads);
  }
  const Method method = f.method == "exact" ? Method::Exact : Method::Approx;
  const bool snr_sweep = f.snr.size() > 1;
  const PowerCurve curve = snr_sweep ? power_curve(d, Sweep::Snr, f.snr, method, f.n_draws, rng, f.threads)
                                     : power_curve(d, Sweep::Threshold, f.mu, method, f.n_draws, rng, f.threads);
  Table t;
  t.columns = {"sweep", "snr", "mu", "power", "mc_stderr"};
  for (const auto& pt : curve.points) {
    t.rows.push_back({std::string(snr_sweep ? "snr" : "mu"), snr_sweep ? pt.abscissa : d.snr,
                      snr_sweep ? d.threshold_mu : pt.abscissa, pt.power, pt.mc_stderr});
  }
  return t;
}

Table outage_table(const Flags& f) {
  RicianSpec base;
  base.K = f.K;
  base.sigma_H = f.sigma_h;
  base.sigma_n = f.sigma_n;
  base.omega_D = f.omega_d;
  base.mu_min = f.mu_min;
  OutageMethod method = OutageMethod::NoncentralChisq;
  if (f.method == "full") method = OutageMethod::FullApprox;
  else if (f.method == "exact") method = OutageMethod::Exact;

  std::vector<std::pair<double, double>> splits;
  double total = 0.0;
  if (f.N > 0) {
    if (f.nt > 0.0 || f.nr > 0.0) throw ParameterError("outage: give either --N or --nt/--nr");
    if (f.N < 2) throw ParameterError("outage: --N must be >= 2");
    total = f.N;
    const std::vector<double> nts =
        f.sweep_nt.empty() ? parse_range("1:" + std::to_string(f.N - 1)) : parse_range(f.sweep_nt);
    for (double nt : nts) {
      if (!(nt > 0.0 && nt < total)) throw ParameterError("outage: every swept n_T must lie in (0, N)");
      splits.emplace_back(nt, total - nt);
    }
  } else {
    if (!f.sweep_nt.empty()) throw ParameterError("outage: --sweep-nt requires --N");
    if (!(f.nt > 0.0 && f.nr > 0.0)) throw ParameterError("outage: need --N or both --nt and --nr");
    splits.emplace_back(f.nt, f.nr);
    total = f.nt + f.nr;
  }

  const RngStream rng(f.seed, kAppsStream);
  std::vector<double> outage;
  std::size_t best = 0;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    RicianSpec s = base;
    s.n_T = splits[i].first;
    s.n_R = splits[i].second;
    outage.push_back(rician_outage(s, method, f.n_draws, rng, f.threads));
    const auto off = [&](std::size_t k) { return std::fabs(2.0 * splits[k].first - total); };
    if (i > 0 && (outage[i] < outage[best] || (outage[i] == outage[best] && off(i) < off(best)))) best = i;
  }
  Table t;
  t.columns = {"n_T", "n_R", "outage", "is_best"};
  for (std::size_t i = 0; i < splits.size(); ++i) {
    t.rows.push_back({splits[i].first, splits[i].second, outage[i], static_cast<std::int64_t>(i == best)});
  }
  return t;
}

Table density_table(const Flags& f) {
  if (f.grid_points < 2) throw ParameterError("--grid-points must be >= 2");
  if (!(f.x_max > 0.0)) throw ParameterError("--x-max must be > 0");
  Table t;
  t.columns = {"x", "fchi_density", "est_error"};
  for (int i = 0; i < f.grid_points; ++i) {
    const double x = f.x_max * i / (f.grid_points - 1);
    const DensityEval d = fchi_density(x, f.p, f.q, f.n, f.rho);
    t.rows.push_back({d.x, d.value, d.est_error});
  }
  return t;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

// Records every option except those that cannot change the data (threads,
// output path, format), so outputs stay byte-identical across --threads.
std::string config_comment(const CLI::App& sub, std::uint64_t seed) {
  std::string c = "rlr " + sub.get_name() + " seed=" + std::to_string(seed);
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "threads" || name == "output-path" || name == "format" || name == "seed") continue;
    const std::string value = opt->count() > 0 ? join(opt->results()) : opt->get_default_str();
    c += " " + name + "=" + value;
  }
  return c;
}

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParameterError(std::string(origin) + ": seed must be an unsigned integer, got '" + text + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ParameterError(std::string(origin) + ": seed out of range");
  return static_cast<std::uint64_t>(v);
}

void write_cell(const Cell& c, std::ostream& out) {
  if (const auto* d = std::get_if<double>(&c)) out << format_double(*d);
  else if (const auto* i = std::get_if<std::int64_t>(&c)) out << *i;
  else if (const auto* s = std::get_if<std::string>(&c)) out << *s;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# " << t.comment << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(row[i], out);
    }
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["comment"] = t.comment;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) obj[t.columns[i]] = *d;
      else if (const auto* n = std::get_if<std::int64_t>(&c)) obj[t.columns[i]] = *n;
      else if (const auto* s = std::get_if<std::string>(&c)) obj[t.columns[i]] = *s;
      else obj[t.columns[i]] = nullptr;
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  std::string seed_text;
  CLI::App app{"Largest-root approximations, exact Monte Carlo oracle and applications", "rlr"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub, bool mc) {
    sub->add_option("--seed", seed_text, "RNG seed (default: $RLR_SEED, else 0)");
    sub->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
    if (mc) sub->add_option("--n-draws", f.n_draws, "Monte Carlo draws")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--output-path", f.output_path, "write to this file instead of stdout");
  };
  const auto single = [&](CLI::App* sub) {
    sub->add_option("--m", f.m, "dimension")->capture_default_str();
    sub->add_option("--nh", f.nh, "signal sample count n_H")->capture_default_str();
    sub->add_option("--sigma", f.sigma, "noise scale")->capture_default_str();
  };
  const auto scenario = [&](CLI::App* sub) {
    sub->add_option("--case", f.scenario, "scenario")
        ->check(CLI::IsMember({"1", "2", "3", "4", "5", "overlap1", "overlap2"}))
        ->capture_default_str();
    single(sub);
    sub->add_option("--ne", f.ne, "noise sample count n_E (cases 3, 4)")->capture_default_str();
    sub->add_option("--lambda", f.lambda, "spike strength")->capture_default_str();
    sub->add_option("--omega", f.omega, "noncentrality")->capture_default_str();
    sub->add_option("--p", f.p, "case 5: first group size")->capture_default_str();
    sub->add_option("--q", f.q, "case 5: second group size")->capture_default_str();
    sub->add_option("--n", f.n, "case 5: sample count")->capture_default_str();
    sub->add_option("--rho", f.rho, "case 5: canonical correlation")->capture_default_str();
  };

  std::map<std::string, std::function<Table()>> commands;

  auto* sample = app.add_subcommand("sample", "draw exact or approximate largest roots / overlaps");
  common(sample, true);
  scenario(sample);
  f.method = "exact";
  sample->add_option("--method", f.method)->check(CLI::IsMember({"exact", "approx"}))->capture_default_str();
  commands["sample"] = [&] { return sample_table(f); };

  auto* compare = app.add_subcommand("compare", "exact vs approximate CDFs and their KS distance");
  common(compare, true);
  scenario(compare);
  compare->add_option("--grid-points", f.grid_points)->capture_default_str();
  commands["compare"] = [&] { return compare_table(f, scenario_from(f, f.scenario)); };

  auto* overlap = app.add_subcommand("overlap", "exact vs approximate eigenvector overlap");
  common(overlap, true);
  single(overlap);
  overlap->add_option("--spike", f.spike, "covariance (lambda) or mean (omega) spike")
      ->check(CLI::IsMember({"lambda", "omega"}))
      ->capture_default_str();
  overlap->add_option("--lambda", f.lambda)->capture_default_str();
  overlap->add_option("--omega", f.omega)->capture_default_str();
  overlap->add_option("--grid-points", f.grid_points)->capture_default_str();
  commands["overlap"] = [&] { return compare_table(f, scenario_from(f, f.spike == "lambda" ? "overlap1" : "overlap2")); };

  auto* moments = app.add_subcommand("moments", "printed and representation moments with MC checks");
  common(moments, true);
  single(moments);
  moments->add_option("--case", f.scenario)->check(CLI::IsMember({"1", "2"}))->capture_default_str();
  moments->add_option("--lambda", f.lambda)->capture_default_str();
  moments->add_option("--omega", f.omega)->capture_default_str();
  commands["moments"] = [&] { return moments_table(f); };

  auto* power = app.add_subcommand("power", "detection power of the largest-root test");
  common(power, true);
  single(power);
  power->add_option("--case", f.scenario)->check(CLI::IsMember({"1", "2", "3", "4"}))->capture_default_str();
  power->add_option("--ne", f.ne)->capture_default_str();
  power->add_option("--snr", f.snr, "SNR value(s); several values sweep SNR")->delimiter(',')->capture_default_str();
  power->add_option("--mu", f.mu, "threshold(s); several values sweep the threshold")->delimiter(',')->capture_default_str();
  power->add_option("--pfa", f.pfa, "calibrate mu to this false-alarm rate instead")->capture_default_str();
  f.method = "exact";
  power->add_option("--method", f.method)->check(CLI::IsMember({"exact", "approx"}))->capture_default_str();
  commands["power"] = [&] { return power_table(f); };

  auto* outage = app.add_subcommand("outage", "rank-one Rician MIMO outage probability");
  common(outage, true);
  outage->add_option("--K", f.K, "Rician factor")->capture_default_str();
  outage->add_option("--sigma-h", f.sigma_h)->capture_default_str();
  outage->add_option("--sigma-n", f.sigma_n)->capture_default_str();
  outage->add_option("--omega-d", f.omega_d)->capture_default_str();
  outage->add_option("--mu-min", f.mu_min)->capture_default_str();
  outage->add_option("--nt", f.nt, "transmit antennas (single split)");
  outage->add_option("--nr", f.nr, "receive antennas (single split)");
  outage->add_option("--N", f.N, "total antennas (sweep n_T, n_R = N - n_T)");
  outage->add_option("--sweep-nt", f.sweep_nt, "n_T range a:b or a:b:step (default 1:N-1)");
  std::string outage_method = "ncx2";
  outage->add_option("--method", outage_method)->check(CLI::IsMember({"ncx2", "full", "exact"}))->capture_default_str();
  commands["outage"] = [&] {
    f.method = outage_method;
    return outage_table(f);
  };

  auto* density = app.add_subcommand("density", "F^chi density on a grid");
  common(density, false);
  density->add_option("--p", f.p)->capture_default_str();
  density->add_option("--q", f.q)->capture_default_str();
  density->add_option("--n", f.n)->capture_default_str();
  density->add_option("--rho", f.rho)->capture_default_str();
  density->add_option("--x-max", f.x_max)->capture_default_str();
  density->add_option("--grid-points", f.grid_points)->capture_default_str();
  commands["density"] = [&] { return density_table(f); };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    if (!seed_text.empty()) {
      f.seed = parse_seed(seed_text, "--seed");
    } else if (const char* env = std::getenv("RLR_SEED")) {
      f.seed = parse_seed(env, "RLR_SEED");
    }
    Table t = commands.at(sub->get_name())();
    t.comment = config_comment(*sub, f.seed);
    std::ofstream file;
    if (!f.output_path.empty()) {
      file.open(f.output_path);
      if (!file) throw ParameterError("cannot open --output-path '" + f.output_path + "'");
    }
    std::ostream& sink = f.output_path.empty() ? out : file;
    if (f.format == "json") write_json(t, sink);
    else write_csv(t, sink);
    return kExitOk;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace rlr::cli
