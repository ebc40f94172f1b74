// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rlr/empirical.hpp"
#include "rlr/error.hpp"

using namespace rlr;
using Catch::Approx;

TEST_CASE("EmpiricalDist queries") {
  const EmpiricalDist d({3.0, 1.0, 2.0, 4.0});
  CHECK(d.count() == 4);
  CHECK(d.samples()[0] == 1.0);
  CHECK(d.samples()[3] == 4.0);
  CHECK(d.cdf(0.5) == 0.0);
  CHECK(d.cdf(2.0) == 0.5);
  CHECK(d.cdf(2.5) == 0.5);
  CHECK(d.cdf(4.0) == 1.0);
  CHECK(d.survival(2.0) == 0.5);
  CHECK(d.quantile(0.0) == 1.0);
  CHECK(d.quantile(0.5) == 2.0);
  CHECK(d.quantile(0.51) == 3.0);
  CHECK(d.quantile(1.0) == 4.0);
  CHECK(d.mean() == 2.5);
  CHECK(d.variance() == Approx(5.0 / 3.0));
  CHECK(d.standard_error() == Approx(std::sqrt(5.0 / 12.0)));
  CHECK_THROWS_AS(d.quantile(1.5), ParameterError);

  const EmpiricalDist one({7.0});
  CHECK(one.variance() == 0.0);

  CHECK_THROWS_AS(EmpiricalDist(std::vector<double>{}), ParameterError);
  CHECK_THROWS_AS(EmpiricalDist({1.0, std::numeric_limits<double>::quiet_NaN()}), ParameterError);
}

TEST_CASE("two-sample KS distance") {
  const EmpiricalDist a({1.0, 2.0, 3.0, 4.0});
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance(EmpiricalDist({0.0}), EmpiricalDist({1.0})) == 1.0);
  CHECK(ks_distance(a, EmpiricalDist({1.5, 2.5, 3.5, 4.5})) == Approx(0.25));
  // Ties across samples are stepped together.
  CHECK(ks_distance(EmpiricalDist({1.0, 1.0, 2.0}), EmpiricalDist({1.0, 2.0, 2.0})) == Approx(1.0 / 3.0));
  // Symmetric.
  const EmpiricalDist b({0.3, 2.2, 2.9});
  CHECK(ks_distance(a, b) == ks_distance(b, a));
}

TEST_CASE("one-sample KS distance") {
  // Uniform CDF on the points {0.25, 0.75}: sup gap is 0.25.
  const EmpiricalDist d({0.25, 0.75});
  CHECK(ks_distance(d, [](double x) { return std::clamp(x, 0.0, 1.0); }) == Approx(0.25));
  CHECK(ks_distance(EmpiricalDist({0.5}), [](double) { return 0.0; }) == 1.0);
}
