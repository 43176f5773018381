#ifndef DECON2D_KERNELS_HPP
#define DECON2D_KERNELS_HPP

#include <functional>
#include <string>

#include "decon2d/types.hpp"

namespace decon2d {

//! A univariate smoothing kernel with its derivative and moment constants.
//!
//! Contract: the kernel integrates to one, is symmetric, continuously
//! differentiable and supported exactly on [-1, 1].  The constructor
//! verifies unit mass, symmetry and zero tails on a fixed probe set and
//! computes the constants
//!   mu2      second moment of w,
//!   rough_w  integral of w^2,
//!   rough_dw integral of (w')^2
//! by composite Simpson quadrature (>= 2048 panels, refined to 1e-12).
class Kernel1D {
 public:
  using Fn = std::function<double(double)>;

  //! Builds a kernel from `w` and its derivative `dw`; throws
  //! std::invalid_argument when the contract above fails.
  Kernel1D(std::string name, Fn w, Fn dw);

  //! The biweight kernel w(u) = (15/16)(1-u^2)^2 on [-1, 1], whose
  //! quadrature constants are cross-checked against the closed forms
  //! mu2 = 1/7, rough_w = 5/7, rough_dw = 15/7.
  static const Kernel1D& biweight();

  //! w(u); zero outside [-1, 1].
  double eval(double u) const { return (u < -1.0 || u > 1.0) ? 0.0 : w_(u); }

  //! w'(u); zero outside [-1, 1].
  double deriv(double u) const { return (u < -1.0 || u > 1.0) ? 0.0 : dw_(u); }

  double mu2() const { return mu2_; }
  double rough_w() const { return rough_w_; }
  double rough_dw() const { return rough_dw_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn w_;
  Fn dw_;
  double mu2_ = 0.0;
  double rough_w_ = 0.0;
  double rough_dw_ = 0.0;
};

//! Plain product-kernel density estimate of the observed density at `x`:
//! (1/(n h1 h2)) sum_k w1((x1-Xk1)/h1) w2((x2-Xk2)/h2).
//! Throws on an empty sample ("no data") or nonpositive bandwidths.
double kde2(const Sample2D& sample, const Kernel1D& k1, const Kernel1D& k2,
            double h1, double h2, Point2 x);

}  // namespace decon2d

#endif
