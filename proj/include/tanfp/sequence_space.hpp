#pragma once

// Finite-support elements of l1 and of the product space R x l1.
//
// Vectors are stored as a dense prefix (1-based in the math, 0-based in
// storage) with an implicit zero tail. All operations align lengths by
// zero padding, so trailing zeros never change a result.

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace tanfp {

class L1Vector {
 public:
  L1Vector() = default;
  explicit L1Vector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
  L1Vector(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}

  /// Stored length (may include trailing zeros).
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// 0-based access; indices past the stored prefix read as zero.
  double operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0.0; }

  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// Copy with trailing zeros removed.
  L1Vector trimmed() const;

  /// Exact equality of values (ignores trailing zeros).
  friend bool operator==(const L1Vector& a, const L1Vector& b);

  friend L1Vector operator+(const L1Vector& a, const L1Vector& b);
  friend L1Vector operator-(const L1Vector& a, const L1Vector& b);
  friend L1Vector operator*(double c, const L1Vector& v);
  L1Vector operator-() const { return -1.0 * *this; }

 private:
  std::vector<double> coeffs_;
};

double l1_norm(const L1Vector& v);

/// Element (x, xbar) of R x l1 with norm |x| + ||xbar||_1.
struct ProductPoint {
  double scalar = 0.0;
  L1Vector vec;

  friend bool operator==(const ProductPoint& a, const ProductPoint& b) {
    return a.scalar == b.scalar && a.vec == b.vec;
  }
  friend ProductPoint operator+(const ProductPoint& a, const ProductPoint& b) {
    return {a.scalar + b.scalar, a.vec + b.vec};
  }
  friend ProductPoint operator-(const ProductPoint& a, const ProductPoint& b) {
    return {a.scalar - b.scalar, a.vec - b.vec};
  }
  friend ProductPoint operator*(double c, const ProductPoint& p) { return {c * p.scalar, c * p.vec}; }
  ProductPoint operator-() const { return {-scalar, -vec}; }
};

double product_norm(const ProductPoint& p);

/// ||a - b|| without materialising the difference.
double distance(const ProductPoint& a, const ProductPoint& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  /// Distance from x to the interval (0 inside).
  double distance_to(double x) const noexcept;

  static Interval whole_line() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
};

/// Closed convex set  [lo, hi] x { ||xbar||_1 <= radius }.
struct AdmissibleSet {
  Interval scalar_interval = Interval::whole_line();
  double ball_radius = std::numeric_limits<double>::infinity();

  /// The whole space R x l1.
  static AdmissibleSet everything() { return {}; }
  /// [0,1] x B_1
  static AdmissibleSet unit_box_ball() { return {{0.0, 1.0}, 1.0}; }

  bool bounded() const noexcept;
};

/// Exact, inclusive membership test on the computed norm.
bool in_set(const ProductPoint& p, const AdmissibleSet& k);

AdmissibleSet intersect(const AdmissibleSet& a, const AdmissibleSet& b);

inline constexpr double kSimplexTolerance = 1e-12;

/// Weighted sum of points; weights must be positive and sum to 1 within 1e-12.
/// Throws WeightSumViolation or LengthMismatch.
ProductPoint convex_combine(std::span<const double> weights, std::span<const ProductPoint> points);

/// Sum of weights with the simplex constraint enforced; used by convex_combine.
void require_simplex(std::span<const double> weights);

}  // namespace tanfp
