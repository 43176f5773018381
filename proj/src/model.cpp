#include "decon2d/model.hpp"

#include <cmath>
#include <stdexcept>

#include "decon2d/datagen.hpp"

namespace decon2d {

namespace {

// Beta(3,3) density, cdf and second density derivative, clamped to [0,1].
double beta33_pdf(double v) {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  const double t = v * (1.0 - v);
  return 30.0 * t * t;
}

double beta33_cdf(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return v * v * v * (10.0 + v * (-15.0 + 6.0 * v));
}

double beta33_d2pdf(double v) {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  return 30.0 * (2.0 + v * (-12.0 + 12.0 * v));
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

TrueModel make_uniform_square() {
  TrueModel m;
  m.name = "uniform";
  m.support = SupportBox{0.0, 0.0, 1.0, 1.0};
  m.pdf = [](Point2 p) {
    return (p.x1 >= 0.0 && p.x1 <= 1.0 && p.x2 >= 0.0 && p.x2 <= 1.0) ? 1.0
                                                                      : 0.0;
  };
  m.cdf = [](Point2 p) { return clamp01(p.x1) * clamp01(p.x2); };
  m.cdf1 = clamp01;
  m.cdf2 = clamp01;
  m.draw = [](CounterRng& rng) {
    const double a = rng.next_uniform();
    const double b = rng.next_uniform();
    return Point2{a, b};
  };
  return m;
}

TrueModel make_example1() {
  // coordinates 0.25 + 1.5 V, V ~ Beta(3,3)
  const double lo = 0.25, scale = 1.5;
  auto pdf1 = [=](double y) { return beta33_pdf((y - lo) / scale) / scale; };
  auto cdf1 = [=](double y) { return beta33_cdf((y - lo) / scale); };
  auto d2pdf1 = [=](double y) {
    return beta33_d2pdf((y - lo) / scale) / (scale * scale * scale);
  };
  TrueModel m;
  m.name = "example1";
  m.support = SupportBox{lo, lo, lo + scale, lo + scale};
  m.pdf = [=](Point2 p) { return pdf1(p.x1) * pdf1(p.x2); };
  m.cdf = [=](Point2 p) { return cdf1(p.x1) * cdf1(p.x2); };
  m.cdf1 = cdf1;
  m.cdf2 = cdf1;
  m.pdf_d11 = [=](Point2 p) { return d2pdf1(p.x1) * pdf1(p.x2); };
  m.pdf_d22 = [=](Point2 p) { return pdf1(p.x1) * d2pdf1(p.x2); };
  m.draw = [=](CounterRng& rng) {
    const double v1 = sample_beta33(rng);
    const double v2 = sample_beta33(rng);
    return Point2{lo + scale * v1, lo + scale * v2};
  };
  return m;
}

TrueModel make_example2() {
  // mixture: weight 2/5 on shifts (0.2, 0.8), weight 3/5 on (0.8, 0.2)
  const double wa = 0.4, wb = 0.6;
  const double a1 = 0.2, a2 = 0.8, b1 = 0.8, b2 = 0.2;
  TrueModel m;
  m.name = "example2";
  m.support = SupportBox{0.2, 0.2, 1.8, 1.8};
  m.pdf = [=](Point2 p) {
    return wa * beta33_pdf(p.x1 - a1) * beta33_pdf(p.x2 - a2) +
           wb * beta33_pdf(p.x1 - b1) * beta33_pdf(p.x2 - b2);
  };
  m.cdf = [=](Point2 p) {
    return wa * beta33_cdf(p.x1 - a1) * beta33_cdf(p.x2 - a2) +
           wb * beta33_cdf(p.x1 - b1) * beta33_cdf(p.x2 - b2);
  };
  m.cdf1 = [=](double y) {
    return wa * beta33_cdf(y - a1) + wb * beta33_cdf(y - b1);
  };
  m.cdf2 = [=](double y) {
    return wa * beta33_cdf(y - a2) + wb * beta33_cdf(y - b2);
  };
  m.pdf_d11 = [=](Point2 p) {
    return wa * beta33_d2pdf(p.x1 - a1) * beta33_pdf(p.x2 - a2) +
           wb * beta33_d2pdf(p.x1 - b1) * beta33_pdf(p.x2 - b2);
  };
  m.pdf_d22 = [=](Point2 p) {
    return wa * beta33_pdf(p.x1 - a1) * beta33_d2pdf(p.x2 - a2) +
           wb * beta33_pdf(p.x1 - b1) * beta33_d2pdf(p.x2 - b2);
  };
  m.draw = [=](CounterRng& rng) {
    const double pick = rng.next_uniform();
    const double v1 = sample_beta33(rng);
    const double v2 = sample_beta33(rng);
    return pick < wa ? Point2{v1 + a1, v2 + a2} : Point2{v1 + b1, v2 + b2};
  };
  return m;
}

TrueModel make_beta33_square() {
  TrueModel m;
  m.name = "beta33";
  m.support = SupportBox{0.0, 0.0, 1.0, 1.0};
  m.pdf = [](Point2 p) { return beta33_pdf(p.x1) * beta33_pdf(p.x2); };
  m.cdf = [](Point2 p) { return beta33_cdf(p.x1) * beta33_cdf(p.x2); };
  m.cdf1 = beta33_cdf;
  m.cdf2 = beta33_cdf;
  m.pdf_d11 = [](Point2 p) {
    return beta33_d2pdf(p.x1) * beta33_pdf(p.x2);
  };
  m.pdf_d22 = [](Point2 p) {
    return beta33_pdf(p.x1) * beta33_d2pdf(p.x2);
  };
  m.draw = [](CounterRng& rng) {
    const double v1 = sample_beta33(rng);
    const double v2 = sample_beta33(rng);
    return Point2{v1, v2};
  };
  return m;
}

}  // namespace

const TrueModel& uniform_square_model() {
  static const TrueModel m = make_uniform_square();
  return m;
}

const TrueModel& example1_model() {
  static const TrueModel m = make_example1();
  return m;
}

const TrueModel& example2_model() {
  static const TrueModel m = make_example2();
  return m;
}

const TrueModel& beta33_square_model() {
  static const TrueModel m = make_beta33_square();
  return m;
}

const TrueModel& bundled_model(std::string_view name) {
  if (name == "uniform") return uniform_square_model();
  if (name == "example1") return example1_model();
  if (name == "example2") return example2_model();
  if (name == "beta33") return beta33_square_model();
  throw std::invalid_argument("unknown model: " + std::string(name));
}

double forward_g(const TrueModel& m, Point2 x) {
  return m.cdf({x.x1, x.x2}) - m.cdf({x.x1, x.x2 - 1.0}) -
         m.cdf({x.x1 - 1.0, x.x2}) + m.cdf({x.x1 - 1.0, x.x2 - 1.0});
}

double mixed_partial_g(const TrueModel& m, Point2 x) {
  return m.pdf({x.x1, x.x2}) - m.pdf({x.x1, x.x2 - 1.0}) -
         m.pdf({x.x1 - 1.0, x.x2}) + m.pdf({x.x1 - 1.0, x.x2 - 1.0});
}

QuadrantProbs quadrant_probs_exact(const TrueModel& m, Point2 x) {
  const double F = m.cdf(x);
  const double F1 = m.cdf1(x.x1);
  const double F2 = m.cdf2(x.x2);
  auto nonneg = [](double v) { return v < 0.0 ? 0.0 : v; };
  QuadrantProbs p;
  p.mm = nonneg(F);
  p.mp = nonneg(F1 - F);
  p.pm = nonneg(F2 - F);
  p.pp = nonneg(1.0 - F1 - F2 + F);
  return p;
}

int default_shift_bound(const TrueModel& m) {
  return static_cast<int>(std::ceil(m.support.max_extent())) + 2;
}

namespace {

double series_sum(const std::function<double(Point2)>& term, Quadrant tag,
                  Point2 x, int shift_bound) {
  if (shift_bound < 0) throw std::invalid_argument("negative shift bound");
  const int i_lo = axis1_plus(tag) ? 1 : 0;
  const int j_lo = axis2_plus(tag) ? 1 : 0;
  const double s1 = axis1_plus(tag) ? 1.0 : -1.0;
  const double s2 = axis2_plus(tag) ? 1.0 : -1.0;
  double acc = 0.0;
  for (int i = i_lo; i <= shift_bound; ++i)
    for (int j = j_lo; j <= shift_bound; ++j)
      acc += term({x.x1 + s1 * i, x.x2 + s2 * j});
  return acc;
}

}  // namespace

double invert_F_series(const std::function<double(Point2)>& g, Quadrant tag,
                       Point2 x, int shift_bound) {
  return series_sum(g, tag, x, shift_bound);
}

double invert_f_series(const std::function<double(Point2)>& d2g, Quadrant tag,
                       Point2 x, int shift_bound) {
  return quadrant_sign(tag) * series_sum(d2g, tag, x, shift_bound);
}

}  // namespace decon2d
