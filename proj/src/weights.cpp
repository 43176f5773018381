#include "decon2d/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace decon2d {

namespace {

constexpr double kLogSpaceBelow = 1e-8;

SimplexMin solve_direct(std::span<const double> a) {
  const std::size_t m = a.size();
  std::vector<double> loo(m);  // leave-one-out products
  double full = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) p *= a[j];
    loo[i] = p;
    full *= a[i];
  }
  double s = 0.0;
  for (double v : loo) s += v;
  SimplexMin out;
  out.t.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.t[i] = loo[i] / s;
  out.min_value = full / s;
  return out;
}

SimplexMin solve_log(std::span<const double> a) {
  const std::size_t m = a.size();
  std::vector<double> lg(m);
  double lg_full = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    lg[i] = std::log(a[i]);
    lg_full += lg[i];
  }
  std::vector<double> lg_loo(m);
  double lg_max = -INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    lg_loo[i] = lg_full - lg[i];
    lg_max = std::max(lg_max, lg_loo[i]);
  }
  double denom = 0.0;  // sum exp(lg_loo - lg_max)
  for (double v : lg_loo) denom += std::exp(v - lg_max);
  SimplexMin out;
  out.t.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    out.t[i] = std::exp(lg_loo[i] - lg_max) / denom;
  out.min_value = std::exp(lg_full - lg_max) / denom;
  return out;
}

}  // namespace

SimplexMin min_weighted_quadratic(std::span<const double> a) {
  if (a.empty()) throw std::invalid_argument("empty coefficient vector");
  bool tiny = false;
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("coefficients must be positive");
    tiny = tiny || v < kLogSpaceBelow;
  }
  return tiny ? solve_log(a) : solve_direct(a);
}

ConvexWeights optimal_weights(const QuadrantProbs& probs) {
  const double a[4] = {probs.mm, probs.mp, probs.pm, probs.pp};
  for (double p : a)
    if (!(p > 0.0)) throw std::invalid_argument("degenerate quadrant");
  const SimplexMin sol = min_weighted_quadratic(a);
  return ConvexWeights{sol.t[0], sol.t[1], sol.t[2], sol.t[3]};
}

VarianceFunctionals variance_functionals(const QuadrantProbs& probs,
                                         const ConvexWeights& t,
                                         double rough_dw1, double rough_dw2) {
  const double a[4] = {probs.mm, probs.mp, probs.pm, probs.pp};
  for (double p : a)
    if (!(p > 0.0)) throw std::invalid_argument("degenerate quadrant");
  t.require_convex(1e-9);
  VarianceFunctionals out;
  const SimplexMin sol = min_weighted_quadratic(a);
  for (Quadrant q : all_quadrants) {
    const double w = t.get(q);
    out.B += w * w * probs.get(q);
  }
  out.C = a[0] * a[1] * a[2] * a[3];
  // sum of leave-one-out triple products = C / min_value's denominator;
  // recover it from the closed-form solution to stay stable in log mode
  out.A = sol.min_value > 0.0 ? sol.min_value / out.C : 0.0;
  out.sigma2 = sol.min_value * rough_dw1 * rough_dw2;
  return out;
}

}  // namespace decon2d
