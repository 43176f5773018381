#include "decon2d/datagen.hpp"

#include <algorithm>
#include <stdexcept>

namespace decon2d {

double median_of_five(std::array<double, 5> u) {
  std::nth_element(u.begin(), u.begin() + 2, u.end());
  return u[2];
}

double sample_beta33(CounterRng& rng) {
  std::array<double, 5> u;
  for (double& v : u) v = rng.next_uniform();
  return median_of_five(u);
}

PairedSample sample_convolved(const TrueModel& m, std::size_t n,
                              std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("empty sample requested");
  if (!m.draw) throw std::invalid_argument("model has no sampler");
  PairedSample out;
  out.y.reserve(n);
  out.x.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    CounterRng rng(CounterRng::derive_key(seed, k));
    const Point2 y = m.draw(rng);
    const double z1 = rng.next_uniform();
    const double z2 = rng.next_uniform();
    out.y.push_back(y);
    out.x.push_back({y.x1 + z1, y.x2 + z2});
  }
  return out;
}

PairedSample gen_example1(std::size_t n, std::uint64_t seed) {
  return sample_convolved(example1_model(), n, seed);
}

PairedSample gen_example2(std::size_t n, std::uint64_t seed) {
  return sample_convolved(example2_model(), n, seed);
}

int quadrant_delta(Point2 x, Point2 t) {
  const bool ge1 = x.x1 >= t.x1;
  const bool ge2 = x.x2 >= t.x2;
  if (ge1 && ge2) return 1;
  if (!ge1 && ge2) return 2;
  if (!ge1 && !ge2) return 3;
  return 4;
}

Point2 censor_transform(const CensoredRow& row) {
  switch (row.delta) {
    case 1: return {row.t1 + 1.0, row.t2 + 1.0};
    case 2: return {row.t1, row.t2 + 1.0};
    case 3: return {row.t1, row.t2};
    case 4: return {row.t1 + 1.0, row.t2};
    default:
      throw std::invalid_argument("censoring label must be 1..4");
  }
}

Sample2D censor_transform(const std::vector<CensoredRow>& rows) {
  Sample2D out;
  out.reserve(rows.size());
  for (const CensoredRow& r : rows) out.push_back(censor_transform(r));
  return out;
}

std::vector<CensoredRow> gen_censored(const TrueModel& m, std::size_t n,
                                      std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("empty sample requested");
  if (!m.draw) throw std::invalid_argument("model has no sampler");
  const SupportBox unit{0.0, 0.0, 1.0, 1.0};
  if (m.support.lo1 < unit.lo1 || m.support.lo2 < unit.lo2 ||
      m.support.hi1 > unit.hi1 || m.support.hi2 > unit.hi2)
    throw std::invalid_argument(
        "censoring requires support inside the unit square");
  std::vector<CensoredRow> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    CounterRng rng(CounterRng::derive_key(seed, k));
    const Point2 x = m.draw(rng);
    const Point2 t{rng.next_uniform(), rng.next_uniform()};
    out.push_back({t.x1, t.x2, quadrant_delta(x, t)});
  }
  return out;
}

}  // namespace decon2d
