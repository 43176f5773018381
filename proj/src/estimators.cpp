#include "decon2d/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "decon2d/threads.hpp"
#include "decon2d/weights.hpp"

namespace decon2d {

namespace {

void require_data(const Sample2D& sample) {
  if (sample.empty()) throw std::invalid_argument("no data");
}

double clamp_prob(double v, double eps) {
  return std::min(1.0, std::max(v, eps));
}

// Sum of kernel values over the admissible shifts of one axis.
double axis_sum(const Kernel1D::Fn& k, AxisSign sign, double x, double obs,
                double h) {
  const ShiftRange r = shift_range(sign, x, obs, h);
  if (r.empty()) return 0.0;
  const double dir = sign == AxisSign::plus ? 1.0 : -1.0;
  double acc = 0.0;
  for (long i = r.lo; i <= r.hi; ++i)
    acc += k((x + dir * static_cast<double>(i) - obs) / h);
  return acc;
}

// Per-observation minus/plus sums for one axis, sharing the range logic.
struct AxisPair {
  double m = 0.0;
  double p = 0.0;
};

AxisPair axis_pair(const Kernel1D& k, bool derivative, double x, double obs,
                   double h) {
  AxisPair out;
  const ShiftRange rm = shift_range(AxisSign::minus, x, obs, h);
  for (long i = rm.lo; i <= rm.hi; ++i) {
    const double u = (x - static_cast<double>(i) - obs) / h;
    out.m += derivative ? k.deriv(u) : k.eval(u);
  }
  const ShiftRange rp = shift_range(AxisSign::plus, x, obs, h);
  for (long i = rp.lo; i <= rp.hi; ++i) {
    const double u = (x + static_cast<double>(i) - obs) / h;
    out.p += derivative ? k.deriv(u) : k.eval(u);
  }
  return out;
}

// Block sums over the four (axis1, axis2) sign combinations.
struct QuadBlocks {
  // indexed [axis1 plus][axis2 plus]
  double b[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  void add(const AxisPair& a1, const AxisPair& a2) {
    b[0][0] += a1.m * a2.m;
    b[0][1] += a1.m * a2.p;
    b[1][0] += a1.p * a2.m;
    b[1][1] += a1.p * a2.p;
  }
  double get(Quadrant q) const {
    return b[axis1_plus(q) ? 1 : 0][axis2_plus(q) ? 1 : 0];
  }
};

std::array<double, 4> finish_density(const QuadBlocks& blocks, std::size_t n,
                                     double h1, double h2) {
  const double scale =
      1.0 / (static_cast<double>(n) * h1 * h1 * h2 * h2);
  std::array<double, 4> out{};
  for (std::size_t t = 0; t < 4; ++t) {
    const Quadrant q = all_quadrants[t];
    out[t] = quadrant_sign(q) * blocks.get(q) * scale;
  }
  return out;
}

std::array<double, 4> finish_distribution(const QuadBlocks& blocks,
                                          std::size_t n, double h_tilde) {
  const double scale = 1.0 / (static_cast<double>(n) * h_tilde * h_tilde);
  std::array<double, 4> out{};
  for (std::size_t t = 0; t < 4; ++t)
    out[t] = blocks.get(all_quadrants[t]) * scale;
  return out;
}

}  // namespace

ShiftRange shift_range(AxisSign sign, double x, double obs, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  ShiftRange r;
  if (sign == AxisSign::minus) {
    r.lo = std::max(0L, static_cast<long>(std::ceil(x - obs - h)));
    r.hi = static_cast<long>(std::floor(x - obs + h));
  } else {
    r.lo = std::max(1L, static_cast<long>(std::ceil(obs - x - h)));
    r.hi = static_cast<long>(std::floor(obs - x + h));
  }
  if (r.hi < r.lo) r = ShiftRange{};  // canonical empty
  return r;
}

EstimatorConfig::EstimatorConfig(double h1_, double h2_, double h_tilde_,
                                 double eps_, const Kernel1D& k1_,
                                 const Kernel1D& k2_)
    : k1(k1_), k2(k2_), h1(h1_), h2(h2_), h_tilde(h_tilde_), eps(eps_) {
  if (!(h1 > 0.0) || !(h2 > 0.0) || !(h_tilde > 0.0) ||
      !std::isfinite(h1 + h2 + h_tilde))
    throw std::invalid_argument("bandwidths must be positive");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("truncation level must lie in (0, 1)");
}

EstimatorConfig EstimatorConfig::with_auto(double h, std::size_t n) {
  return with_auto(h, h, n);
}

EstimatorConfig EstimatorConfig::with_auto(double h1, double h2,
                                           std::size_t n) {
  if (n < 2) throw std::invalid_argument("need n >= 2 for default settings");
  const double nn = static_cast<double>(n);
  return EstimatorConfig(h1, h2, std::pow(nn, -1.0 / 6.0),
                         1.0 / std::log(nn));
}

double f_hat(Quadrant tag, const Sample2D& sample, const EstimatorConfig& cfg,
             Point2 x) {
  require_data(sample);
  const AxisSign s1 = axis1_plus(tag) ? AxisSign::plus : AxisSign::minus;
  const AxisSign s2 = axis2_plus(tag) ? AxisSign::plus : AxisSign::minus;
  auto d1 = [&](double u) { return cfg.k1.deriv(u); };
  auto d2 = [&](double u) { return cfg.k2.deriv(u); };
  double acc = 0.0;
  for (const Point2& obs : sample)
    acc += axis_sum(d1, s1, x.x1, obs.x1, cfg.h1) *
           axis_sum(d2, s2, x.x2, obs.x2, cfg.h2);
  const double n = static_cast<double>(sample.size());
  return quadrant_sign(tag) * acc /
         (n * cfg.h1 * cfg.h1 * cfg.h2 * cfg.h2);
}

std::array<double, 4> f_hat_all(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x) {
  require_data(sample);
  QuadBlocks blocks;
  for (const Point2& obs : sample)
    blocks.add(axis_pair(cfg.k1, true, x.x1, obs.x1, cfg.h1),
               axis_pair(cfg.k2, true, x.x2, obs.x2, cfg.h2));
  return finish_density(blocks, sample.size(), cfg.h1, cfg.h2);
}

double F_hat(Quadrant tag, const Sample2D& sample, const EstimatorConfig& cfg,
             Point2 x) {
  require_data(sample);
  const AxisSign s1 = axis1_plus(tag) ? AxisSign::plus : AxisSign::minus;
  const AxisSign s2 = axis2_plus(tag) ? AxisSign::plus : AxisSign::minus;
  auto w1 = [&](double u) { return cfg.k1.eval(u); };
  auto w2 = [&](double u) { return cfg.k2.eval(u); };
  double acc = 0.0;
  for (const Point2& obs : sample)
    acc += axis_sum(w1, s1, x.x1, obs.x1, cfg.h_tilde) *
           axis_sum(w2, s2, x.x2, obs.x2, cfg.h_tilde);
  const double n = static_cast<double>(sample.size());
  return acc / (n * cfg.h_tilde * cfg.h_tilde);
}

std::array<double, 4> F_hat_all(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x) {
  require_data(sample);
  QuadBlocks blocks;
  for (const Point2& obs : sample)
    blocks.add(axis_pair(cfg.k1, false, x.x1, obs.x1, cfg.h_tilde),
               axis_pair(cfg.k2, false, x.x2, obs.x2, cfg.h_tilde));
  return finish_distribution(blocks, sample.size(), cfg.h_tilde);
}

double F_hat_truncated(Quadrant tag, const Sample2D& sample,
                       const EstimatorConfig& cfg, Point2 x) {
  return clamp_prob(F_hat(tag, sample, cfg, x), cfg.eps);
}

double f_combined(const Sample2D& sample, const EstimatorConfig& cfg, Point2 x,
                  const ConvexWeights& t) {
  t.require_convex();
  const std::array<double, 4> f = f_hat_all(sample, cfg, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += t.get(all_quadrants[i]) * f[i];
  return acc;
}

CombinedDensity f_combined_auto(const Sample2D& sample,
                                const EstimatorConfig& cfg, Point2 x) {
  require_data(sample);
  QuadBlocks density, distribution;
  for (const Point2& obs : sample) {
    density.add(axis_pair(cfg.k1, true, x.x1, obs.x1, cfg.h1),
                axis_pair(cfg.k2, true, x.x2, obs.x2, cfg.h2));
    distribution.add(axis_pair(cfg.k1, false, x.x1, obs.x1, cfg.h_tilde),
                     axis_pair(cfg.k2, false, x.x2, obs.x2, cfg.h_tilde));
  }
  const std::array<double, 4> f =
      finish_density(density, sample.size(), cfg.h1, cfg.h2);
  const std::array<double, 4> F =
      finish_distribution(distribution, sample.size(), cfg.h_tilde);
  CombinedDensity out;
  out.probs = QuadrantProbs{clamp_prob(F[0], cfg.eps), clamp_prob(F[1], cfg.eps),
                            clamp_prob(F[2], cfg.eps),
                            clamp_prob(F[3], cfg.eps)};
  out.weights = optimal_weights(out.probs);
  out.value = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    out.value += out.weights.get(all_quadrants[i]) * f[i];
  return out;
}

std::size_t GridSpec::nodes_per_axis() const {
  if (count_per_unit <= 0)
    throw std::invalid_argument("count_per_unit must be positive");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("grid bounds invalid");
  const double steps = (hi - lo) * count_per_unit;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw std::invalid_argument("non-commensurate grid");
  return static_cast<std::size_t>(rounded) + 1;
}

namespace {

// ---------------------------------------------------------------------
// binned evaluation
// ---------------------------------------------------------------------

// Dense lattice field indexed by integer lattice coordinates relative to
// the grid origin (spacing 1/count_per_unit).
struct Field {
  long lo1 = 0, lo2 = 0;
  std::size_t n1 = 0, n2 = 0;
  std::vector<double> v;

  void resize(long l1, long h1, long l2, long h2) {
    lo1 = l1;
    lo2 = l2;
    n1 = static_cast<std::size_t>(h1 - l1 + 1);
    n2 = static_cast<std::size_t>(h2 - l2 + 1);
    v.assign(n1 * n2, 0.0);
  }
  bool inside1(long i) const {
    return i >= lo1 && i < lo1 + static_cast<long>(n1);
  }
  bool inside2(long j) const {
    return j >= lo2 && j < lo2 + static_cast<long>(n2);
  }
  double& at(long i, long j) {
    return v[static_cast<std::size_t>(i - lo1) * n2 +
             static_cast<std::size_t>(j - lo2)];
  }
  double get(long i, long j) const {
    return v[static_cast<std::size_t>(i - lo1) * n2 +
             static_cast<std::size_t>(j - lo2)];
  }
};

// Linear binning of the sample onto the lattice.
Field bin_sample(const Sample2D& sample, const GridSpec& grid) {
  const double cpu = grid.count_per_unit;
  double min1 = std::numeric_limits<double>::infinity(), max1 = -min1;
  double min2 = min1, max2 = -min1;
  for (const Point2& p : sample) {
    min1 = std::min(min1, p.x1);
    max1 = std::max(max1, p.x1);
    min2 = std::min(min2, p.x2);
    max2 = std::max(max2, p.x2);
  }
  Field bins;
  bins.resize(static_cast<long>(std::floor((min1 - grid.lo) * cpu)),
              static_cast<long>(std::floor((max1 - grid.lo) * cpu)) + 1,
              static_cast<long>(std::floor((min2 - grid.lo) * cpu)),
              static_cast<long>(std::floor((max2 - grid.lo) * cpu)) + 1);
  for (const Point2& p : sample) {
    const double p1 = (p.x1 - grid.lo) * cpu;
    const double p2 = (p.x2 - grid.lo) * cpu;
    const long i = static_cast<long>(std::floor(p1));
    const long j = static_cast<long>(std::floor(p2));
    const double f1 = p1 - static_cast<double>(i);
    const double f2 = p2 - static_cast<double>(j);
    bins.at(i, j) += (1.0 - f1) * (1.0 - f2);
    bins.at(i, j + 1) += (1.0 - f1) * f2;
    bins.at(i + 1, j) += f1 * (1.0 - f2);
    bins.at(i + 1, j + 1) += f1 * f2;
  }
  return bins;
}

std::vector<double> kernel_stencil(const Kernel1D& k, bool derivative,
                                   double h, int cpu, long& radius) {
  radius = static_cast<long>(std::floor(h * cpu + 1e-9));
  std::vector<double> s(2 * radius + 1);
  for (long d = -radius; d <= radius; ++d) {
    const double u = static_cast<double>(d) / (h * static_cast<double>(cpu));
    s[static_cast<std::size_t>(d + radius)] =
        derivative ? k.deriv(u) : k.eval(u);
  }
  return s;
}

// Separable convolution of the binned counts with per-axis stencils,
// scaled by `scale`; the output field is grown by the stencil radii.
Field convolve(const Field& bins, const std::vector<double>& s1, long r1,
               const std::vector<double>& s2, long r2, double scale,
               int threads) {
  Field tmp;  // axis-1 pass
  const long bhi1 = bins.lo1 + static_cast<long>(bins.n1) - 1;
  const long bhi2 = bins.lo2 + static_cast<long>(bins.n2) - 1;
  tmp.resize(bins.lo1 - r1, bhi1 + r1, bins.lo2, bhi2);
  parallel_chunks(tmp.n1, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t row = lo; row < hi; ++row) {
      const long i = tmp.lo1 + static_cast<long>(row);
      for (long j = bins.lo2; j <= bhi2; ++j) {
        double acc = 0.0;
        for (long d = -r1; d <= r1; ++d) {
          const long src = i - d;
          if (bins.inside1(src))
            acc += s1[static_cast<std::size_t>(d + r1)] * bins.get(src, j);
        }
        tmp.at(i, j) = acc;
      }
    }
  });
  Field out;  // axis-2 pass
  out.resize(tmp.lo1, bhi1 + r1, bins.lo2 - r2, bhi2 + r2);
  parallel_chunks(out.n1, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t row = lo; row < hi; ++row) {
      const long i = out.lo1 + static_cast<long>(row);
      for (long j = out.lo2; j < out.lo2 + static_cast<long>(out.n2); ++j) {
        double acc = 0.0;
        for (long d = -r2; d <= r2; ++d) {
          const long src = j - d;
          if (tmp.inside2(src))
            acc += s2[static_cast<std::size_t>(d + r2)] * tmp.get(i, src);
        }
        out.at(i, j) = acc * scale;
      }
    }
  });
  return out;
}

// Accumulates the four block sums of `field` at output lattice node
// (i, j): block [a][b] sums field(i + s1*cpu, j + s2*cpu) over s1 in the
// minus (a=0) or plus (a=1) shift set, likewise s2.
void accumulate_blocks(const Field& field, long i, long j, long cpu,
                       double out[2][2]) {
  const long fhi1 = field.lo1 + static_cast<long>(field.n1) - 1;
  const long fhi2 = field.lo2 + static_cast<long>(field.n2) - 1;
  auto lowest = [&](long idx, long flo) {
    // smallest s with idx + s*cpu >= flo
    const long num = flo - idx;
    long s = num / cpu;
    if (s * cpu < num) ++s;
    return s;
  };
  auto highest = [&](long idx, long fhi) {
    // largest s with idx + s*cpu <= fhi
    const long num = fhi - idx;
    long s = num / cpu;
    if (s * cpu > num) --s;
    return s;
  };
  const long s1_min = lowest(i, field.lo1), s1_max = highest(i, fhi1);
  const long s2_min = lowest(j, field.lo2), s2_max = highest(j, fhi2);
  out[0][0] = out[0][1] = out[1][0] = out[1][1] = 0.0;
  for (long s1 = s1_min; s1 <= s1_max; ++s1) {
    const int a = s1 >= 1 ? 1 : 0;
    const long row = i + s1 * cpu;
    for (long s2 = s2_min; s2 <= s2_max; ++s2) {
      const int b = s2 >= 1 ? 1 : 0;
      out[a][b] += field.get(row, j + s2 * cpu);
    }
  }
}

GridResult evaluate_grid_binned(const Sample2D& sample,
                                const EstimatorConfig& cfg,
                                const GridSpec& grid, GridMethod method,
                                int threads) {
  const std::size_t nodes = grid.nodes_per_axis();
  const long cpu = grid.count_per_unit;
  const Field bins = bin_sample(sample, grid);
  const double n = static_cast<double>(sample.size());

  long r1 = 0, r2 = 0;
  const std::vector<double> sd1 = kernel_stencil(cfg.k1, true, cfg.h1,
                                                 grid.count_per_unit, r1);
  const std::vector<double> sd2 = kernel_stencil(cfg.k2, true, cfg.h2,
                                                 grid.count_per_unit, r2);
  const Field density_field =
      convolve(bins, sd1, r1, sd2, r2,
               1.0 / (n * cfg.h1 * cfg.h1 * cfg.h2 * cfg.h2), threads);

  Field dist_field;
  if (method == GridMethod::combined) {
    long rt1 = 0, rt2 = 0;
    const std::vector<double> se1 = kernel_stencil(cfg.k1, false, cfg.h_tilde,
                                                   grid.count_per_unit, rt1);
    const std::vector<double> se2 = kernel_stencil(cfg.k2, false, cfg.h_tilde,
                                                   grid.count_per_unit, rt2);
    dist_field = convolve(bins, se1, rt1, se2, rt2,
                          1.0 / (n * cfg.h_tilde * cfg.h_tilde), threads);
  }

  GridResult res;
  res.spec = grid;
  res.nodes = nodes;
  res.values.assign(nodes * nodes, 0.0);
  parallel_chunks(nodes, threads, [&](std::size_t lo, std::size_t hi) {
    double blocks[2][2];
    double dist_blocks[2][2];
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < nodes; ++j) {
        accumulate_blocks(density_field, static_cast<long>(i),
                          static_cast<long>(j), cpu, blocks);
        const std::array<double, 4> f = {blocks[0][0], -blocks[0][1],
                                         -blocks[1][0], blocks[1][1]};
        double value;
        if (method == GridMethod::combined) {
          accumulate_blocks(dist_field, static_cast<long>(i),
                            static_cast<long>(j), cpu, dist_blocks);
          const QuadrantProbs probs{
              clamp_prob(dist_blocks[0][0], cfg.eps),
              clamp_prob(dist_blocks[0][1], cfg.eps),
              clamp_prob(dist_blocks[1][0], cfg.eps),
              clamp_prob(dist_blocks[1][1], cfg.eps)};
          const ConvexWeights w = optimal_weights(probs);
          value = w.mm * f[0] + w.mp * f[1] + w.pm * f[2] + w.pp * f[3];
        } else {
          const std::size_t t = static_cast<std::size_t>(method) - 1;
          value = f[t];
        }
        res.values[i * nodes + j] = value;
      }
    }
  });
  return res;
}

GridResult evaluate_grid_exact(const Sample2D& sample,
                               const EstimatorConfig& cfg,
                               const GridSpec& grid, GridMethod method,
                               int threads) {
  const std::size_t nodes = grid.nodes_per_axis();
  GridResult res;
  res.spec = grid;
  res.nodes = nodes;
  res.values.assign(nodes * nodes, 0.0);
  parallel_chunks(nodes, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double x1 = grid.node(i);
      for (std::size_t j = 0; j < nodes; ++j) {
        const Point2 x{x1, grid.node(j)};
        double value;
        if (method == GridMethod::combined) {
          value = f_combined_auto(sample, cfg, x).value;
        } else {
          const std::size_t t = static_cast<std::size_t>(method) - 1;
          value = f_hat(all_quadrants[t], sample, cfg, x);
        }
        res.values[i * nodes + j] = value;
      }
    }
  });
  return res;
}

}  // namespace

GridResult evaluate_grid(const Sample2D& sample, const EstimatorConfig& cfg,
                         const GridSpec& grid, GridMethod method,
                         GridMode mode, int threads, bool clip_negative) {
  require_data(sample);
  grid.nodes_per_axis();  // validates commensurability
  if (mode == GridMode::binned &&
      grid.count_per_unit * std::max(cfg.h1, cfg.h2) < 10.0)
    throw std::invalid_argument("under-resolved kernel for binned evaluation");
  GridResult res = mode == GridMode::binned
                       ? evaluate_grid_binned(sample, cfg, grid, method,
                                              threads)
                       : evaluate_grid_exact(sample, cfg, grid, method,
                                             threads);
  if (clip_negative)
    for (double& v : res.values) v = std::max(0.0, v);
  return res;
}

}  // namespace decon2d
