#include "tanfp/sampling.hpp"

#include <cmath>

#include "tanfp/errors.hpp"

namespace tanfp {

double PointSampler::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int PointSampler::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

L1Vector PointSampler::ball_vector(double radius, int max_coords) {
  const int k = uniform_int(1, max_coords);
  std::vector<double> coeffs(static_cast<std::size_t>(k));
  for (auto& c : coeffs) c = uniform(-1.0, 1.0);
  const double target = radius * uniform01();
  const double norm = l1_norm(L1Vector(coeffs));
  if (norm == 0.0) return L1Vector(std::move(coeffs));
  const double scale = target / norm;
  for (auto& c : coeffs) c *= scale;
  L1Vector v(std::move(coeffs));
  // Rounding in the rescale can overshoot the radius by an ulp.
  while (l1_norm(v) > radius) v = std::nextafter(1.0, 0.0) * v;
  return v;
}

ProductPoint PointSampler::point_in(const AdmissibleSet& k) {
  if (!k.bounded()) throw Error(ErrorKind::DomainViolation, "cannot sample from an unbounded admissible set");
  const auto& iv = k.scalar_interval;
  double s = uniform(iv.lo, iv.hi);
  if (s > iv.hi) s = iv.hi;
  return {s, ball_vector(k.ball_radius)};
}

}  // namespace tanfp
