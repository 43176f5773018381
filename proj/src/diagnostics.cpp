#include "decon2d/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "decon2d/datagen.hpp"
#include "decon2d/threads.hpp"
#include "decon2d/weights.hpp"

namespace decon2d {

namespace {

constexpr double kFdStep = 1e-3;
constexpr std::uint64_t kRepStream = 0x7265706c69636174ULL;

double second_difference(const std::function<double(Point2)>& f, Point2 x,
                         bool axis1) {
  const double d = kFdStep;
  const Point2 up = axis1 ? Point2{x.x1 + d, x.x2} : Point2{x.x1, x.x2 + d};
  const Point2 dn = axis1 ? Point2{x.x1 - d, x.x2} : Point2{x.x1, x.x2 - d};
  return (f(up) - 2.0 * f(x) + f(dn)) / (d * d);
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;       // unbiased
  double skew = 0.0;      // of standardized values
  double exkurt = 0.0;
};

Moments moments(const std::vector<double>& v) {
  const std::size_t r = v.size();
  Moments out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(r);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - out.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double rr = static_cast<double>(r);
  out.var = r > 1 ? m2 / (rr - 1.0) : 0.0;
  m2 /= rr;
  m3 /= rr;
  m4 /= rr;
  if (m2 > 0.0) {
    out.skew = m3 / std::pow(m2, 1.5);
    out.exkurt = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

double safe_ratio(double num, double den) {
  return den != 0.0 ? num / den : 0.0;
}

const TrueModel& example_model(int example) {
  if (example == 1) return example1_model();
  if (example == 2) return example2_model();
  throw std::invalid_argument("example must be 1 or 2");
}

}  // namespace

double predicted_bias(const TrueModel& m, const Kernel1D& k1,
                      const Kernel1D& k2, double h1, double h2, Point2 x) {
  const double f11 = m.pdf_d11 ? m.pdf_d11(x) : second_difference(m.pdf, x, true);
  const double f22 = m.pdf_d22 ? m.pdf_d22(x) : second_difference(m.pdf, x, false);
  return 0.5 * (k1.mu2() * h1 * h1 * f11 + k2.mu2() * h2 * h2 * f22);
}

double predicted_var(const TrueModel& m, const Kernel1D& k1,
                     const Kernel1D& k2, const ConvexWeights& t,
                     std::size_t n, double h1, double h2, Point2 x) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  t.require_convex(1e-9);
  const QuadrantProbs p = quadrant_probs_exact(m, x);
  double B = 0.0;
  for (Quadrant q : all_quadrants) {
    const double w = t.get(q);
    B += w * w * p.get(q);
  }
  const double h13 = h1 * h1 * h1, h23 = h2 * h2 * h2;
  return B * k1.rough_dw() * k2.rough_dw() /
         (static_cast<double>(n) * h13 * h23);
}

double predicted_bias_F(const TrueModel& m, const Kernel1D& k1,
                        const Kernel1D& k2, Quadrant tag, double h_tilde,
                        Point2 x) {
  auto prob = [&m, tag](Point2 p) {
    return quadrant_probs_exact(m, p).get(tag);
  };
  const double p11 = second_difference(prob, x, true);
  const double p22 = second_difference(prob, x, false);
  return 0.5 * h_tilde * h_tilde * (k1.mu2() * p11 + k2.mu2() * p22);
}

double predicted_var_F(const TrueModel& m, const Kernel1D& k1,
                       const Kernel1D& k2, Quadrant tag, std::size_t n,
                       double h_tilde, Point2 x) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  return quadrant_probs_exact(m, x).get(tag) * k1.rough_w() * k2.rough_w() /
         (static_cast<double>(n) * h_tilde * h_tilde);
}

std::vector<MCReport> run_mc(int example, std::size_t n, double h,
                             double h_tilde, double eps, std::size_t reps,
                             const std::vector<Point2>& xs,
                             std::uint64_t seed, WeightMode mode,
                             int threads) {
  const TrueModel& model = example_model(example);
  if (n == 0 || reps < 2 || xs.empty())
    throw std::invalid_argument("invalid sizes");
  const EstimatorConfig cfg(h, h, h_tilde, eps);

  // fixed variance-optimal weights per point (also the predicted-law weights)
  std::vector<ConvexWeights> oracle_weights;
  oracle_weights.reserve(xs.size());
  for (Point2 x : xs)
    oracle_weights.push_back(optimal_weights(quadrant_probs_exact(model, x)));

  const std::size_t np = xs.size();
  std::vector<std::vector<double>> combined(np, std::vector<double>(reps));
  std::vector<std::array<std::vector<double>, 4>> tags(np);
  for (auto& a : tags)
    for (auto& v : a) v.resize(reps);

  parallel_chunks(reps, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = CounterRng::derive_key(seed, kRepStream, r);
      const PairedSample data = example == 1 ? gen_example1(n, rep_seed)
                                             : gen_example2(n, rep_seed);
      for (std::size_t p = 0; p < np; ++p) {
        const std::array<double, 4> f = f_hat_all(data.x, cfg, xs[p]);
        ConvexWeights w = oracle_weights[p];
        if (mode == WeightMode::estimated) {
          const std::array<double, 4> F = F_hat_all(data.x, cfg, xs[p]);
          const QuadrantProbs probs{
              std::min(1.0, std::max(F[0], eps)),
              std::min(1.0, std::max(F[1], eps)),
              std::min(1.0, std::max(F[2], eps)),
              std::min(1.0, std::max(F[3], eps))};
          w = optimal_weights(probs);
        }
        double v = 0.0;
        for (std::size_t t = 0; t < 4; ++t) {
          v += w.get(all_quadrants[t]) * f[t];
          tags[p][t][r] = f[t];
        }
        combined[p][r] = v;
      }
    }
  });

  std::vector<MCReport> out;
  out.reserve(np);
  for (std::size_t p = 0; p < np; ++p) {
    const Moments mo = moments(combined[p]);
    MCReport rep;
    rep.point = xs[p];
    rep.estimator = mode == WeightMode::estimated ? "combined_estimated"
                                                  : "combined_oracle";
    rep.reps = reps;
    rep.mean_est = mo.mean;
    rep.var_est = mo.var;
    rep.true_value = model.pdf(xs[p]);
    rep.empirical_bias = mo.mean - rep.true_value;
    rep.predicted_bias =
        predicted_bias(model, cfg.k1, cfg.k2, cfg.h1, cfg.h2, xs[p]);
    rep.predicted_var = predicted_var(model, cfg.k1, cfg.k2,
                                      oracle_weights[p], n, cfg.h1, cfg.h2,
                                      xs[p]);
    rep.bias_ratio = safe_ratio(rep.empirical_bias, rep.predicted_bias);
    rep.var_ratio = safe_ratio(rep.var_est, rep.predicted_var);
    rep.skewness = mo.skew;
    rep.excess_kurtosis = mo.exkurt;
    for (std::size_t t = 0; t < 4; ++t)
      rep.per_tag_var[t] = moments(tags[p][t]).var;
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<MCReport> run_mc_F(int example, std::size_t n, double h_tilde,
                               std::size_t reps,
                               const std::vector<Point2>& xs,
                               std::uint64_t seed, int threads) {
  const TrueModel& model = example_model(example);
  if (n == 0 || reps < 2 || xs.empty())
    throw std::invalid_argument("invalid sizes");
  const EstimatorConfig cfg(h_tilde, h_tilde, h_tilde, 0.5);

  const std::size_t np = xs.size();
  std::vector<std::array<std::vector<double>, 4>> series(np);
  for (auto& a : series)
    for (auto& v : a) v.resize(reps);

  parallel_chunks(reps, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = CounterRng::derive_key(seed, kRepStream, r);
      const PairedSample data = example == 1 ? gen_example1(n, rep_seed)
                                             : gen_example2(n, rep_seed);
      for (std::size_t p = 0; p < np; ++p) {
        const std::array<double, 4> F = F_hat_all(data.x, cfg, xs[p]);
        for (std::size_t t = 0; t < 4; ++t) series[p][t][r] = F[t];
      }
    }
  });

  std::vector<MCReport> out;
  out.reserve(np * 4);
  for (std::size_t p = 0; p < np; ++p) {
    std::array<double, 4> vars{};
    std::array<Moments, 4> mos;
    for (std::size_t t = 0; t < 4; ++t) {
      mos[t] = moments(series[p][t]);
      vars[t] = mos[t].var;
    }
    const QuadrantProbs probs = quadrant_probs_exact(model, xs[p]);
    for (std::size_t t = 0; t < 4; ++t) {
      const Quadrant q = all_quadrants[t];
      MCReport rep;
      rep.point = xs[p];
      rep.estimator = std::string("F_") + quadrant_name(q);
      rep.reps = reps;
      rep.mean_est = mos[t].mean;
      rep.var_est = mos[t].var;
      rep.true_value = probs.get(q);
      rep.empirical_bias = rep.mean_est - rep.true_value;
      rep.predicted_bias =
          predicted_bias_F(model, cfg.k1, cfg.k2, q, h_tilde, xs[p]);
      rep.predicted_var =
          predicted_var_F(model, cfg.k1, cfg.k2, q, n, h_tilde, xs[p]);
      rep.bias_ratio = safe_ratio(rep.empirical_bias, rep.predicted_bias);
      rep.var_ratio = safe_ratio(rep.var_est, rep.predicted_var);
      rep.skewness = mos[t].skew;
      rep.excess_kurtosis = mos[t].exkurt;
      rep.per_tag_var = vars;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace decon2d
