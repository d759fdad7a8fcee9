#pragma once

#include <cstdint>
#include <random>

#include "tanfp/sequence_space.hpp"

namespace tanfp {

/// Seeded sampler for points of a bounded AdmissibleSet.
///
/// Scalar part: uniform on the interval. Vector part: k ~ U{1..8}
/// coordinates drawn uniformly in [-1, 1], rescaled to a norm drawn
/// uniformly in [0, radius]. Uses raw 64-bit engine output (not the
/// std distributions) so that a seed reproduces the same points on any
/// standard library.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  L1Vector ball_vector(double radius, int max_coords = 8);
  /// Throws DomainViolation if the set is unbounded.
  ProductPoint point_in(const AdmissibleSet& k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tanfp
