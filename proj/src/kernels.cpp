#include "decon2d/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "decon2d/quadrature.hpp"

namespace decon2d {

namespace {

constexpr double kConstTol = 1e-12;

void validate_shape(const Kernel1D::Fn& w, const Kernel1D::Fn& dw) {
  // zero tails: support must not extend past [-1, 1]
  for (double u : {1.0 + 1e-9, 1.0001, 1.25, 1.5, 2.0, 5.0, 25.0}) {
    if (w(u) != 0.0 || w(-u) != 0.0)
      throw std::invalid_argument("kernel has mass outside [-1, 1]");
  }
  // symmetry on a fixed probe grid
  for (int i = 0; i <= 32; ++i) {
    const double u = static_cast<double>(i) / 32.0;
    if (!std::isfinite(w(u)) || std::abs(w(u) - w(-u)) > 1e-12)
      throw std::invalid_argument("kernel is not symmetric");
  }
  // derivative spot check against central differences
  for (double u : {-0.9, -0.55, -0.2, 0.1, 0.45, 0.8}) {
    const double d = 1e-6;
    const double fd = (w(u + d) - w(u - d)) / (2.0 * d);
    if (std::abs(fd - dw(u)) > 1e-6 * std::max(1.0, std::abs(dw(u))))
      throw std::invalid_argument("kernel derivative mismatch");
  }
}

}  // namespace

Kernel1D::Kernel1D(std::string name, Fn w, Fn dw)
    : name_(std::move(name)), w_(std::move(w)), dw_(std::move(dw)) {
  if (!w_ || !dw_) throw std::invalid_argument("kernel callables required");
  validate_shape(w_, dw_);
  const double mass = integrate([this](double u) { return w_(u); }, -1.0, 1.0);
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("kernel does not integrate to one");
  mu2_ = integrate([this](double u) { return u * u * w_(u); }, -1.0, 1.0);
  rough_w_ = integrate([this](double u) { return w_(u) * w_(u); }, -1.0, 1.0);
  rough_dw_ = integrate([this](double u) { return dw_(u) * dw_(u); }, -1.0, 1.0);
}

const Kernel1D& Kernel1D::biweight() {
  static const Kernel1D k = [] {
    Kernel1D bw(
        "biweight",
        [](double u) {
          const double t = 1.0 - u * u;
          return t <= 0.0 ? 0.0 : 15.0 / 16.0 * t * t;
        },
        [](double u) {
          const double t = 1.0 - u * u;
          return t <= 0.0 ? 0.0 : -15.0 / 4.0 * u * t;
        });
    if (std::abs(bw.mu2() - 1.0 / 7.0) > kConstTol ||
        std::abs(bw.rough_w() - 5.0 / 7.0) > kConstTol ||
        std::abs(bw.rough_dw() - 15.0 / 7.0) > kConstTol)
      throw std::logic_error("biweight constants drifted from closed forms");
    return bw;
  }();
  return k;
}

double kde2(const Sample2D& sample, const Kernel1D& k1, const Kernel1D& k2,
            double h1, double h2, Point2 x) {
  if (sample.empty()) throw std::invalid_argument("no data");
  if (!(h1 > 0.0) || !(h2 > 0.0))
    throw std::invalid_argument("bandwidths must be positive");
  double acc = 0.0;
  for (const Point2& obs : sample)
    acc += k1.eval((x.x1 - obs.x1) / h1) * k2.eval((x.x2 - obs.x2) / h2);
  return acc / (static_cast<double>(sample.size()) * h1 * h2);
}

}  // namespace decon2d
