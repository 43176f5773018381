#ifndef DECON2D_DIAGNOSTICS_HPP
#define DECON2D_DIAGNOSTICS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "decon2d/estimators.hpp"
#include "decon2d/kernels.hpp"
#include "decon2d/model.hpp"
#include "decon2d/types.hpp"

namespace decon2d {

//! Leading bias of the density estimators at x:
//! (1/2)(mu2_1 h1^2 f_11 + mu2_2 h2^2 f_22), using the model's analytic
//! second partials when present, else central differences (step 1e-3).
double predicted_bias(const TrueModel& m, const Kernel1D& k1,
                      const Kernel1D& k2, double h1, double h2, Point2 x);

//! Leading variance of a weighted combination at x:
//! B(x, t) * rough_dw1 * rough_dw2 / (n h1^3 h2^3), with
//! B = sum_q t_q^2 F^q(x) from the exact quadrant probabilities.
double predicted_var(const TrueModel& m, const Kernel1D& k1,
                     const Kernel1D& k2, const ConvexWeights& t,
                     std::size_t n, double h1, double h2, Point2 x);

//! Predicted bias/variance of the distribution estimator F_hat^tag at x
//! under bandwidth h_tilde (second partials of the quadrant probability
//! by central differences, step 1e-3).
double predicted_bias_F(const TrueModel& m, const Kernel1D& k1,
                        const Kernel1D& k2, Quadrant tag, double h_tilde,
                        Point2 x);
double predicted_var_F(const TrueModel& m, const Kernel1D& k1,
                       const Kernel1D& k2, Quadrant tag, std::size_t n,
                       double h_tilde, Point2 x);

//! How the combination weights are chosen inside run_mc.
enum class WeightMode {
  estimated,  // weights from truncated distribution estimates per rep
  oracle      // fixed variance-optimal weights from the exact model
};

//! Monte Carlo summary for one estimator at one point.
struct MCReport {
  Point2 point;
  std::string estimator;
  std::size_t reps = 0;
  double mean_est = 0.0;
  double var_est = 0.0;  // unbiased sample variance across replications
  double true_value = 0.0;
  double empirical_bias = 0.0;
  double predicted_bias = 0.0;
  double predicted_var = 0.0;
  double bias_ratio = 0.0;  // empirical / predicted
  double var_ratio = 0.0;
  double skewness = 0.0;         // of standardized replicates
  double excess_kurtosis = 0.0;
  std::array<double, 4> per_tag_var{};  // mm, mp, pm, pp
};

//! Replicated-sampling study of the combined density estimator for a
//! bundled example (1 or 2).  Each replication r draws a fresh sample of
//! size n from substream (seed, r), evaluates the four tag estimators
//! and their weighted combination at every requested point, and the
//! reports aggregate mean, variance, standardized shape and the
//! predicted bias/variance laws.  Replications run in parallel over
//! disjoint substreams with a deterministic reduction: results are
//! identical for every thread count.  Requires reps >= 2 (variance and
//! shape columns are meaningful from about 50 on).
std::vector<MCReport> run_mc(int example, std::size_t n, double h,
                             double h_tilde, double eps, std::size_t reps,
                             const std::vector<Point2>& xs,
                             std::uint64_t seed,
                             WeightMode mode = WeightMode::estimated,
                             int threads = 0);

//! As run_mc, for the four distribution estimators F_hat^tag at
//! bandwidth h_tilde; emits one report per (point, tag).
std::vector<MCReport> run_mc_F(int example, std::size_t n, double h_tilde,
                               std::size_t reps,
                               const std::vector<Point2>& xs,
                               std::uint64_t seed, int threads = 0);

}  // namespace decon2d

#endif
