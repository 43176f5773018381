#ifndef DECON2D_QUADRATURE_HPP
#define DECON2D_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace decon2d {

//! Composite Simpson integration of `f` over [a, b].
//!
//! Starts at `min_panels` panels and doubles until two successive
//! refinements agree within `tol` (relative to max(1, |I|)).  Intended
//! for the smooth compactly supported integrands used throughout this
//! library; throws if the refinement fails to settle.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12,
                 std::size_t min_panels = 2048) {
  if (!(a < b)) throw std::invalid_argument("integrate: empty interval");
  auto simpson = [&](std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
    for (std::size_t i = 2; i < n; i += 2) even += f(a + h * static_cast<double>(i));
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
  };
  std::size_t n = min_panels < 2 ? 2 : min_panels + (min_panels % 2);
  double prev = simpson(n);
  for (int round = 0; round < 8; ++round) {
    n *= 2;
    const double cur = simpson(n);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw std::runtime_error("integrate: quadrature did not converge");
}

}  // namespace decon2d

#endif
