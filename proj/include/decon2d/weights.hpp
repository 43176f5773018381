#ifndef DECON2D_WEIGHTS_HPP
#define DECON2D_WEIGHTS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "decon2d/types.hpp"

namespace decon2d {

//! Solution of min sum_i a_i t_i^2 over the probability simplex.
struct SimplexMin {
  std::vector<double> t;
  double min_value = 0.0;
};

//! Minimizes sum_i a_i t_i^2 subject to t_i >= 0, sum t_i = 1, for
//! strictly positive coefficients a (any length m >= 1).
//!
//! The closed form puts t_i proportional to prod_{j != i} a_j, with
//! minimum value prod_j a_j / sum_i prod_{j != i} a_j.  Products switch
//! to log space when any coefficient drops below 1e-8 so extreme
//! magnitudes cannot underflow.  Throws on empty input or nonpositive
//! coefficients.
SimplexMin min_weighted_quadratic(std::span<const double> a);

//! Variance-optimal convex weights for the four quadrant estimators,
//! given (estimates of) the quadrant probabilities.  Throws
//! "degenerate quadrant" when any probability is nonpositive.
ConvexWeights optimal_weights(const QuadrantProbs& probs);

//! Asymptotic variance ingredients for a weighted combination at a point.
//!
//! B      = sum_i t_i^2 p_i, the variance factor of the combination;
//! C      = product of the four probabilities;
//! A      = 1 / sum of the four leave-one-out triple products, so that
//!          A * C equals B at the optimal weights;
//! sigma2 = A * C * rough_dw1 * rough_dw2, the limit variance scale of
//!          the optimally weighted density estimator.
struct VarianceFunctionals {
  double B = 0.0;
  double C = 0.0;
  double A = 0.0;
  double sigma2 = 0.0;
};

//! Computes the functionals above; `rough_dw1`/`rough_dw2` are the
//! integrated squared kernel derivatives of the two axes.  Throws when a
//! probability is nonpositive or the weights are not convex.
VarianceFunctionals variance_functionals(const QuadrantProbs& probs,
                                         const ConvexWeights& t,
                                         double rough_dw1, double rough_dw2);

}  // namespace decon2d

#endif
