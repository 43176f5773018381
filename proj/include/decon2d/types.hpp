#ifndef DECON2D_TYPES_HPP
#define DECON2D_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace decon2d {

//! A point in the plane.
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

//! A bivariate sample, one Point2 per observation.
using Sample2D = std::vector<Point2>;

//! Quadrant labels for the four inversion directions.
//!
//! The first letter is the sign pattern on axis 1, the second on axis 2:
//! 'm' accumulates integer shifts at or below the evaluation point,
//! 'p' accumulates shifts strictly above it.  mm corresponds to the
//! lower-left probability P(Y1 <= x1, Y2 <= x2), mp to upper-left,
//! pm to lower-right and pp to upper-right.
enum class Quadrant { mm, mp, pm, pp };

inline constexpr std::array<Quadrant, 4> all_quadrants = {
    Quadrant::mm, Quadrant::mp, Quadrant::pm, Quadrant::pp};

//! True when the axis-1 shifts of `q` run upward (strictly positive).
constexpr bool axis1_plus(Quadrant q) {
  return q == Quadrant::pm || q == Quadrant::pp;
}

//! True when the axis-2 shifts of `q` run upward (strictly positive).
constexpr bool axis2_plus(Quadrant q) {
  return q == Quadrant::mp || q == Quadrant::pp;
}

//! Sign attached to quadrant `q` in the density inversion series.
constexpr double quadrant_sign(Quadrant q) {
  return (q == Quadrant::mm || q == Quadrant::pp) ? 1.0 : -1.0;
}

constexpr const char* quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::mm: return "mm";
    case Quadrant::mp: return "mp";
    case Quadrant::pm: return "pm";
    default: return "pp";
  }
}

//! The four quadrant probabilities (or estimates of them) at a point.
//!
//! For exact model probabilities each entry lies in [0,1] and the four
//! sum to one; truncated estimates reuse this carrier without that
//! guarantee.
struct QuadrantProbs {
  double mm = 0.0;
  double mp = 0.0;
  double pm = 0.0;
  double pp = 0.0;

  double get(Quadrant q) const {
    switch (q) {
      case Quadrant::mm: return mm;
      case Quadrant::mp: return mp;
      case Quadrant::pm: return pm;
      default: return pp;
    }
  }
  double sum() const { return mm + mp + pm + pp; }
};

//! Convex weights attached to the four quadrant estimators.
struct ConvexWeights {
  double mm = 0.25;
  double mp = 0.25;
  double pm = 0.25;
  double pp = 0.25;

  double get(Quadrant q) const {
    switch (q) {
      case Quadrant::mm: return mm;
      case Quadrant::mp: return mp;
      case Quadrant::pm: return pm;
      default: return pp;
    }
  }
  double sum() const { return mm + mp + pm + pp; }

  //! Throws unless the entries are nonnegative and sum to 1 within `tol`.
  void require_convex(double tol = 1e-12) const {
    if (mm < -tol || mp < -tol || pm < -tol || pp < -tol ||
        std::abs(sum() - 1.0) > tol)
      throw std::invalid_argument("not a convex combination");
  }
};

}  // namespace decon2d

#endif
