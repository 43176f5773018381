#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "decon2d/weights.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace decon2d;

namespace {

// Exhaustive search over the 3-simplex grid with step 0.01 (t4 implied).
double brute_force_min4(const std::array<double, 4>& a) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; i + j <= 100; ++j)
      for (int k = 0; i + j + k <= 100; ++k) {
        const double t1 = i / 100.0, t2 = j / 100.0, t3 = k / 100.0;
        const double t4 = 1.0 - t1 - t2 - t3;
        const double v = a[0] * t1 * t1 + a[1] * t2 * t2 + a[2] * t3 * t3 +
                         a[3] * t4 * t4;
        best = std::min(best, v);
      }
  return best;
}

}  // namespace

TEST_CASE("closed-form minimizers", "[weights]") {
  SECTION("equal coefficients") {
    const double a[4] = {1.0, 1.0, 1.0, 1.0};
    const SimplexMin s = min_weighted_quadratic(a);
    for (double t : s.t) CHECK(t == Approx(0.25).margin(1e-15));
    CHECK(s.min_value == Approx(0.25).margin(1e-15));
  }
  SECTION("m = 2") {
    const double a[2] = {1.0, 2.0};
    const SimplexMin s = min_weighted_quadratic(a);
    CHECK(s.t[0] == Approx(2.0 / 3.0).margin(1e-15));
    CHECK(s.t[1] == Approx(1.0 / 3.0).margin(1e-15));
    CHECK(s.min_value == Approx(2.0 / 3.0).margin(1e-15));
  }
  SECTION("m = 3") {
    const double a[3] = {1.0, 2.0, 3.0};
    const SimplexMin s = min_weighted_quadratic(a);
    CHECK(s.t[0] == Approx(6.0 / 11.0).margin(1e-15));
    CHECK(s.t[1] == Approx(3.0 / 11.0).margin(1e-15));
    CHECK(s.t[2] == Approx(2.0 / 11.0).margin(1e-15));
    CHECK(s.min_value == Approx(6.0 / 11.0).margin(1e-15));
  }
}

TEST_CASE("optimal_weights worked example", "[weights]") {
  const ConvexWeights w = optimal_weights({0.5, 0.2, 0.2, 0.1});
  CHECK(w.mm == Approx(1.0 / 11.0).margin(1e-12));
  CHECK(w.mp == Approx(5.0 / 22.0).margin(1e-12));
  CHECK(w.pm == Approx(5.0 / 22.0).margin(1e-12));
  CHECK(w.pp == Approx(5.0 / 11.0).margin(1e-12));
  CHECK(w.sum() == Approx(1.0).margin(1e-12));
}

TEST_CASE("degenerate and invalid inputs", "[weights]") {
  REQUIRE_THROWS_WITH(optimal_weights({0.5, 0.0, 0.3, 0.2}),
                      ContainsSubstring("degenerate quadrant"));
  REQUIRE_THROWS_WITH(optimal_weights({0.5, -0.1, 0.4, 0.2}),
                      ContainsSubstring("degenerate quadrant"));
  REQUIRE_THROWS_AS(min_weighted_quadratic(std::vector<double>{}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(min_weighted_quadratic(std::vector<double>{1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("brute-force grid search cannot beat the closed form",
          "[weights]") {
  std::mt19937_64 rng(20260815);
  std::uniform_real_distribution<double> unif(0.05, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::array<double, 4> a;
    for (double& v : a) v = unif(rng);
    const SimplexMin s = min_weighted_quadratic(a);
    const double grid_min = brute_force_min4(a);
    const double amax = std::max({a[0], a[1], a[2], a[3]});
    REQUIRE(grid_min >= s.min_value - 1e-12);
    REQUIRE(grid_min - s.min_value <= 2.0 * amax * 1e-4);
  }
}

TEST_CASE("minimizer properties on random inputs", "[weights]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(1e-3, 1.0);
  std::exponential_distribution<double> expd(1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> a(4);
    for (double& v : a) v = unif(rng);
    const SimplexMin s = min_weighted_quadratic(a);

    double tsum = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      REQUIRE(s.t[i] >= 0.0);
      tsum += s.t[i];
      quad += a[i] * s.t[i] * s.t[i];
    }
    REQUIRE(tsum == Approx(1.0).margin(1e-12));
    REQUIRE(quad == Approx(s.min_value).epsilon(1e-12));

    // any other simplex point does no better
    std::array<double, 4> e;
    double esum = 0.0;
    for (double& v : e) {
      v = expd(rng);
      esum += v;
    }
    double other = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double ti = e[i] / esum;
      other += a[i] * ti * ti;
    }
    REQUIRE(other >= s.min_value - 1e-12);
  }
}

TEST_CASE("scale equivariance", "[weights]") {
  const std::vector<double> a = {0.37, 0.11, 0.89, 0.23};
  const SimplexMin base = min_weighted_quadratic(a);
  SECTION("powers of two scale exactly") {
    for (double lam : {0.5, 2.0, 8.0, 1024.0}) {
      std::vector<double> b;
      for (double v : a) b.push_back(lam * v);
      const SimplexMin s = min_weighted_quadratic(b);
      for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(s.t[i] == base.t[i]);
      REQUIRE(s.min_value == lam * base.min_value);
    }
  }
  SECTION("general scales within roundoff") {
    for (double lam : {0.3, 1.7, 123.456}) {
      std::vector<double> b;
      for (double v : a) b.push_back(lam * v);
      const SimplexMin s = min_weighted_quadratic(b);
      for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(s.t[i] == Approx(base.t[i]).epsilon(1e-12));
      REQUIRE(s.min_value == Approx(lam * base.min_value).epsilon(1e-12));
    }
  }
}

TEST_CASE("log-space path agrees with extended precision", "[weights]") {
  const std::vector<double> a = {1e-12, 3e-4, 0.2, 0.5};
  const SimplexMin s = min_weighted_quadratic(a);
  // long double direct evaluation as oracle
  long double loo[4], full = 1.0L, denom = 0.0L;
  for (int i = 0; i < 4; ++i) {
    long double p = 1.0L;
    for (int j = 0; j < 4; ++j)
      if (j != i) p *= static_cast<long double>(a[j]);
    loo[i] = p;
    full *= static_cast<long double>(a[i]);
    denom += p;
  }
  for (int i = 0; i < 4; ++i)
    REQUIRE(s.t[i] == Approx(static_cast<double>(loo[i] / denom)).epsilon(1e-10));
  REQUIRE(s.min_value ==
          Approx(static_cast<double>(full / denom)).epsilon(1e-10));

  // extreme magnitudes must not underflow the weights themselves
  const std::vector<double> tiny = {1e-300, 1e-300, 1e-300, 1e-300};
  const SimplexMin st = min_weighted_quadratic(tiny);
  for (int i = 0; i < 4; ++i) REQUIRE(st.t[i] == Approx(0.25).margin(1e-12));
}

TEST_CASE("variance functionals at the symmetric point", "[weights]") {
  const QuadrantProbs p{0.25, 0.25, 0.25, 0.25};
  const ConvexWeights t{0.25, 0.25, 0.25, 0.25};
  const double rho = 15.0 / 7.0;
  const VarianceFunctionals v = variance_functionals(p, t, rho, rho);
  CHECK(v.B == Approx(1.0 / 16.0).margin(1e-14));
  CHECK(v.C == Approx(1.0 / 256.0).margin(1e-16));
  CHECK(v.A == Approx(16.0).margin(1e-10));
  CHECK(v.sigma2 == Approx(0.25 * 0.25 * rho * rho).margin(1e-12));
  CHECK(v.sigma2 == Approx(0.28699).margin(5e-6));
}

TEST_CASE("variance functionals: B reduces and attains A*C at optimum",
          "[weights]") {
  SECTION("single-tag weights pick out the probability") {
    const QuadrantProbs p{0.3, 0.25, 0.25, 0.2};
    const VarianceFunctionals v =
        variance_functionals(p, ConvexWeights{1.0, 0.0, 0.0, 0.0}, 1.0, 1.0);
    CHECK(v.B == Approx(0.3).margin(1e-15));
  }
  SECTION("optimal weights give B = A*C") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(0.01, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
      QuadrantProbs p{unif(rng), unif(rng), unif(rng), unif(rng)};
      const ConvexWeights t = optimal_weights(p);
      const VarianceFunctionals v = variance_functionals(p, t, 1.0, 1.0);
      REQUIRE(v.B == Approx(v.A * v.C).epsilon(1e-12));
    }
  }
  SECTION("guards") {
    REQUIRE_THROWS_AS(variance_functionals({0.0, 0.2, 0.3, 0.5},
                                           ConvexWeights{}, 1.0, 1.0),
                      std::invalid_argument);
    REQUIRE_THROWS_WITH(
        variance_functionals({0.25, 0.25, 0.25, 0.25},
                             ConvexWeights{0.5, 0.5, 0.5, 0.5}, 1.0, 1.0),
        ContainsSubstring("not a convex combination"));
  }
}
