#ifndef DECON2D_DATAGEN_HPP
#define DECON2D_DATAGEN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "decon2d/model.hpp"
#include "decon2d/rng.hpp"
#include "decon2d/types.hpp"

namespace decon2d {

//! Latent sample Y and observed sample X = Y + Z, Z ~ Uniform([0,1)^2).
struct PairedSample {
  Sample2D y;
  Sample2D x;
};

//! Median of five values (the third order statistic).
double median_of_five(std::array<double, 5> u);

//! Beta(3,3) draw realized as the median of five uniforms (5 draws).
double sample_beta33(CounterRng& rng);

//! n observations of the smooth product benchmark: Y = 0.25 + 1.5 V per
//! coordinate, V ~ Beta(3,3).  Observation k consumes the substream
//! derive_key(seed, k) with draw order V1 (5), V2 (5), Z1, Z2, so earlier
//! rows never change when n grows.
PairedSample gen_example1(std::size_t n, std::uint64_t seed);

//! n observations of the mixture benchmark: with probability 2/5 the pair
//! (V1 + 0.2, V2 + 0.8), else (V1 + 0.8, V2 + 0.2), V ~ Beta(3,3).  Draw
//! order per observation: mixture pick, V1 (5), V2 (5), Z1, Z2.
PairedSample gen_example2(std::size_t n, std::uint64_t seed);

//! Y ~ model (via its exact sampler) and X = Y + Z.  Draw order per
//! observation: the model's draws, then Z1, Z2.
PairedSample sample_convolved(const TrueModel& m, std::size_t n,
                              std::uint64_t seed);

//! One quadrant-censored record: inspection point T and quadrant label.
struct CensoredRow {
  double t1 = 0.0;
  double t2 = 0.0;
  int delta = 0;
};

//! Quadrant label of the latent point x relative to the inspection point
//! t: 1 when x1 >= t1 and x2 >= t2, 2 when x1 < t1 and x2 >= t2, 3 when
//! both fall below, 4 when x1 >= t1 and x2 < t2.
int quadrant_delta(Point2 x, Point2 t);

//! The transformed observation V = T + offset(delta), with offsets
//! (1,1), (0,1), (0,0), (1,0) for delta = 1..4.  V is then distributed
//! like X + Z, Z ~ Uniform([0,1)^2), when T is itself uniform on the unit
//! square.  Throws on a label outside 1..4.
Point2 censor_transform(const CensoredRow& row);
Sample2D censor_transform(const std::vector<CensoredRow>& rows);

//! Quadrant-censored data: latent X ~ model, inspection T ~ U([0,1)^2),
//! recorded as (T, delta).  The model support must lie inside the unit
//! square.  Draw order per observation: the model's draws, then T1, T2.
std::vector<CensoredRow> gen_censored(const TrueModel& m, std::size_t n,
                                      std::uint64_t seed);

}  // namespace decon2d

#endif
