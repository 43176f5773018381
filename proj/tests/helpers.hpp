#ifndef DECON2D_TESTS_HELPERS_HPP
#define DECON2D_TESTS_HELPERS_HPP

#include <cstddef>
#include <functional>

// Independent fixed-panel composite Simpson rule used as a quadrature
// oracle in tests (kept separate from the library's integrator on
// purpose).
inline double oracle_simpson(const std::function<double(double)>& f, double a,
                             double b, std::size_t panels = 4096) {
  const double h = (b - a) / static_cast<double>(panels);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i)
    acc += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Tensor-product Simpson over a rectangle.
inline double oracle_simpson2(const std::function<double(double, double)>& f,
                              double a1, double b1, double a2, double b2,
                              std::size_t panels = 512) {
  auto outer = [&](double x1) {
    return oracle_simpson([&](double x2) { return f(x1, x2); }, a2, b2,
                          panels);
  };
  return oracle_simpson(outer, a1, b1, panels);
}

#endif
