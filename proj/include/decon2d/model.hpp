#ifndef DECON2D_MODEL_HPP
#define DECON2D_MODEL_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <string_view>

#include "decon2d/rng.hpp"
#include "decon2d/types.hpp"

namespace decon2d {

//! Axis-aligned bounding box of a density's support.
struct SupportBox {
  double lo1 = 0.0, lo2 = 0.0, hi1 = 1.0, hi2 = 1.0;

  bool contains(Point2 p, double pad = 0.0) const {
    return p.x1 >= lo1 - pad && p.x1 <= hi1 + pad && p.x2 >= lo2 - pad &&
           p.x2 <= hi2 + pad;
  }
  double max_extent() const {
    return std::max(hi1 - lo1, hi2 - lo2);
  }
};

//! A fully specified latent distribution used as ground truth.
//!
//! `cdf`, `cdf1`, `cdf2` must be valid on all of R^2 / R (clamped outside
//! the support).  `pdf_d11` / `pdf_d22` are optional analytic second
//! partials of the density (null: consumers fall back to central
//! differences).  `draw` is an optional exact sampler consuming a
//! documented number of uniforms per call.
struct TrueModel {
  std::string name;
  SupportBox support;
  std::function<double(Point2)> pdf;
  std::function<double(Point2)> cdf;
  std::function<double(double)> cdf1;
  std::function<double(double)> cdf2;
  std::function<double(Point2)> pdf_d11;
  std::function<double(Point2)> pdf_d22;
  std::function<Point2(CounterRng&)> draw;
};

//! Uniform density on the unit square.
const TrueModel& uniform_square_model();

//! Product model with coordinates 0.25 + 1.5 V, V ~ Beta(3,3); the
//! standard smooth benchmark, support [0.25, 1.75]^2.
const TrueModel& example1_model();

//! Two-component mixture (2/5, 3/5) of products of Beta(3,3) coordinates
//! shifted by (0.2, 0.8) and (0.8, 0.2); support inside [0.2, 1.8]^2.
const TrueModel& example2_model();

//! Product of raw Beta(3,3) coordinates on the unit square; a smooth
//! model that fits entirely inside [0,1]^2 (used by censoring runs).
const TrueModel& beta33_square_model();

//! Lookup by name: "uniform", "example1", "example2", "beta33".
const TrueModel& bundled_model(std::string_view name);

//! Density of the observed data X = Y + Z, Z ~ Uniform([0,1)^2):
//! g(x) = F(x1,x2) - F(x1,x2-1) - F(x1-1,x2) + F(x1-1,x2-1).
double forward_g(const TrueModel& m, Point2 x);

//! Mixed partial d^2 g / dx1 dx2, the same four-point combination of the
//! density.
double mixed_partial_g(const TrueModel& m, Point2 x);

//! Exact quadrant probabilities of Y relative to the point x.
QuadrantProbs quadrant_probs_exact(const TrueModel& m, Point2 x);

//! Shift bound sufficient for the inversion series of a bundled model:
//! ceil(max axis extent of the support box) + 2.
int default_shift_bound(const TrueModel& m);

//! Distribution inversion series: sums g over the quadrant's integer
//! shift set, truncated at `shift_bound` terms per axis.  For tag mm the
//! result is F(x); the other tags recover the remaining quadrant
//! probabilities.  All four series use positive signs.
double invert_F_series(const std::function<double(Point2)>& g, Quadrant tag,
                       Point2 x, int shift_bound);

//! Density inversion series on the mixed partial of g, with signs
//! (+, -, -, +) for (mm, mp, pm, pp); every tag recovers f(x).
double invert_f_series(const std::function<double(Point2)>& d2g, Quadrant tag,
                       Point2 x, int shift_bound);

}  // namespace decon2d

#endif
