#ifndef DECON2D_ESTIMATORS_HPP
#define DECON2D_ESTIMATORS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "decon2d/kernels.hpp"
#include "decon2d/types.hpp"

namespace decon2d {

//! Direction of the integer-shift set on one axis: `minus` walks down
//! from the evaluation point (shifts 0, -1, -2, ...), `plus` walks up
//! (shifts +1, +2, ...).
enum class AxisSign { minus, plus };

//! Closed integer interval of admissible shift indices; empty if lo > hi.
struct ShiftRange {
  long lo = 0;
  long hi = -1;
  bool empty() const { return lo > hi; }
  long count() const { return empty() ? 0 : hi - lo + 1; }
};

//! Shift indices i for which the kernel argument stays inside [-1, 1]:
//! for `minus`, {i >= 0 : |x - i - obs| <= h}; for `plus`,
//! {i >= 1 : |x + i - obs| <= h}.  The kernel window is narrower than
//! the shift spacing whenever h < 1/2, so the range then holds at most
//! one index.
ShiftRange shift_range(AxisSign sign, double x, double obs, double h);

//! Bandwidths, truncation level and kernels used by all estimators.
struct EstimatorConfig {
  Kernel1D k1;
  Kernel1D k2;
  double h1;       // density bandwidth, axis 1
  double h2;       // density bandwidth, axis 2
  double h_tilde;  // distribution-function bandwidth (both axes)
  double eps;      // lower truncation level for distribution estimates

  EstimatorConfig(double h1_, double h2_, double h_tilde_, double eps_,
                  const Kernel1D& k1_ = Kernel1D::biweight(),
                  const Kernel1D& k2_ = Kernel1D::biweight());

  //! Defaults driven by the sample size: h1 = h2 = h,
  //! h_tilde = n^(-1/6), eps = 1/log(n).
  static EstimatorConfig with_auto(double h, std::size_t n);
  static EstimatorConfig with_auto(double h1, double h2, std::size_t n);

  //! True when max(h1, h2) >= 1/2: neighbouring integer shifts can then
  //! both fall inside one kernel window, which the variance theory
  //! excludes.  Estimates are still computed.
  bool bandwidth_warning() const { return std::max(h1, h2) >= 0.5; }
};

//! Inversion-series density estimator for one quadrant tag at x.
double f_hat(Quadrant tag, const Sample2D& sample, const EstimatorConfig& cfg,
             Point2 x);

//! All four tag estimates in a single pass over the sample
//! (order mm, mp, pm, pp).
std::array<double, 4> f_hat_all(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x);

//! Inversion-series estimate of the quadrant probability F^tag(x),
//! smoothed at bandwidth h_tilde.  All four series carry positive signs.
double F_hat(Quadrant tag, const Sample2D& sample, const EstimatorConfig& cfg,
             Point2 x);

std::array<double, 4> F_hat_all(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x);

//! min(max(F_hat, eps), 1): keeps estimated quadrant probabilities
//! usable as weight inputs.
double F_hat_truncated(Quadrant tag, const Sample2D& sample,
                       const EstimatorConfig& cfg, Point2 x);

//! Convex combination of the four tag estimates with fixed weights.
//! Throws "not a convex combination" when the weights are invalid.
double f_combined(const Sample2D& sample, const EstimatorConfig& cfg, Point2 x,
                  const ConvexWeights& t);

//! Combined estimate with weights estimated from the data at x.
struct CombinedDensity {
  double value = 0.0;
  ConvexWeights weights;
  QuadrantProbs probs;  // truncated distribution estimates driving weights
};

//! Estimates the four quadrant probabilities at x (truncated at eps),
//! derives the variance-optimal weights from them and returns the
//! weighted density estimate.
CombinedDensity f_combined_auto(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x);

//! Square evaluation grid [lo, hi]^2 with `count_per_unit` nodes per
//! unit length (spacing 1/count_per_unit).  hi - lo must be an integer
//! multiple of the spacing, so unit shifts map nodes onto nodes.
struct GridSpec {
  double lo = -1.0;
  double hi = 4.0;
  int count_per_unit = 100;

  double spacing() const { return 1.0 / count_per_unit; }
  //! Nodes per axis; throws "non-commensurate grid" when hi - lo is not
  //! an integer multiple of the spacing.
  std::size_t nodes_per_axis() const;
  double node(std::size_t k) const {
    return lo + static_cast<double>(k) / count_per_unit;
  }
};

enum class GridMethod { combined, mm, mp, pm, pp };
enum class GridMode { exact, binned };

//! Density surface on a grid; values in row-major order with the axis-1
//! index outermost: values[i * nodes + j] = estimate at (node(i), node(j)).
struct GridResult {
  GridSpec spec;
  std::size_t nodes = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const {
    return values[i * nodes + j];
  }
};

//! Evaluates the selected estimator over the grid.
//!
//! `exact` computes every node independently from the raw sample.
//! `binned` assigns observations to lattice nodes by linear binning,
//! convolves once per axis with a sampled kernel stencil and accumulates
//! integer shifts; it requires count_per_unit * max(h1, h2) >= 10
//! ("under-resolved kernel" otherwise) and agrees with `exact` up to the
//! binning error.  `clip_negative` zeroes negative density values for
//! presentation output only.
GridResult evaluate_grid(const Sample2D& sample, const EstimatorConfig& cfg,
                         const GridSpec& grid, GridMethod method,
                         GridMode mode, int threads = 0,
                         bool clip_negative = false);

}  // namespace decon2d

#endif
