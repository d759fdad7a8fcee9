#include "tanfp/sequence_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tanfp/errors.hpp"

namespace tanfp {

L1Vector L1Vector::trimmed() const {
  auto end = coeffs_.size();
  while (end > 0 && coeffs_[end - 1] == 0.0) --end;
  return L1Vector(std::vector<double>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(end)));
}

bool operator==(const L1Vector& a, const L1Vector& b) {
  const auto n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

namespace {

template <typename Op>
L1Vector zip_padded(const L1Vector& a, const L1Vector& b, Op op) {
  std::vector<double> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return L1Vector(std::move(out));
}

}  // namespace

L1Vector operator+(const L1Vector& a, const L1Vector& b) {
  return zip_padded(a, b, [](double x, double y) { return x + y; });
}

L1Vector operator-(const L1Vector& a, const L1Vector& b) {
  return zip_padded(a, b, [](double x, double y) { return x - y; });
}

L1Vector operator*(double c, const L1Vector& v) {
  std::vector<double> out(v.coeffs().begin(), v.coeffs().end());
  for (auto& x : out) x *= c;
  return L1Vector(std::move(out));
}

double l1_norm(const L1Vector& v) {
  double sum = 0.0;
  for (double x : v.coeffs()) sum += std::abs(x);
  return sum;
}

double product_norm(const ProductPoint& p) { return std::abs(p.scalar) + l1_norm(p.vec); }

double distance(const ProductPoint& a, const ProductPoint& b) {
  double sum = std::abs(a.scalar - b.scalar);
  const auto n = std::max(a.vec.size(), b.vec.size());
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a.vec[i] - b.vec[i]);
  return sum;
}

double Interval::distance_to(double x) const noexcept {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

bool AdmissibleSet::bounded() const noexcept {
  return std::isfinite(scalar_interval.lo) && std::isfinite(scalar_interval.hi) && std::isfinite(ball_radius);
}

bool in_set(const ProductPoint& p, const AdmissibleSet& k) {
  return k.scalar_interval.contains(p.scalar) && l1_norm(p.vec) <= k.ball_radius;
}

AdmissibleSet intersect(const AdmissibleSet& a, const AdmissibleSet& b) {
  return {{std::max(a.scalar_interval.lo, b.scalar_interval.lo), std::min(a.scalar_interval.hi, b.scalar_interval.hi)},
          std::min(a.ball_radius, b.ball_radius)};
}

void require_simplex(std::span<const double> weights) {
  double sum = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0)) {
      std::ostringstream os;
      os << "weight " << j << " = " << weights[j] << " is not positive";
      throw Error(ErrorKind::WeightSumViolation, os.str());
    }
    sum += weights[j];
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum << ", simplex constraint |sum - 1| <= 1e-12 violated";
    throw Error(ErrorKind::WeightSumViolation, os.str());
  }
}

ProductPoint convex_combine(std::span<const double> weights, std::span<const ProductPoint> points) {
  if (weights.size() != points.size() || weights.empty()) {
    std::ostringstream os;
    os << weights.size() << " weights for " << points.size() << " points";
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  require_simplex(weights);

  std::size_t len = 0;
  for (const auto& p : points) len = std::max(len, p.vec.size());
  double scalar = 0.0;
  std::vector<double> vec(len, 0.0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    scalar += weights[j] * points[j].scalar;
    const auto c = points[j].vec.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) vec[i] += weights[j] * c[i];
  }
  return {scalar, L1Vector(std::move(vec))};
}

}  // namespace tanfp
