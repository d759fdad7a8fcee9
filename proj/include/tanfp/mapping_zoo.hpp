#pragma once

// Concrete mappings on R x l1: T_alpha, S, S_f, f_kappa and the identity,
// with exact nth powers and their total-asymptotic profiles.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tanfp/sequence_space.hpp"

namespace tanfp {

/// (M, M*) such that phi(xi) <= M* xi for all xi >= M.
struct LinearBound {
  double threshold = 1.0;  // M
  double slope = 1.0;      // M*
};

/// Sequences mu_n, lambda_n and gauge phi certifying
///   ||T^n x - T^n y|| <= ||I^n x - I^n y|| + mu_n phi(||I^n x - I^n y||) + lambda_n.
struct TotalAsymptoticProfile {
  std::function<double(int)> mu;
  std::function<double(int)> lambda;
  std::function<double(double)> phi;
  std::optional<LinearBound> linear_bound;

  /// mu = lambda = 0, phi(t) = t, (M, M*) = (1, 1).
  static TotalAsymptoticProfile nonexpansive();
  /// mu_n = rate^n, lambda = 0, phi(t) = t + sqrt(t), (M, M*) = (1, 2).
  static TotalAsymptoticProfile geometric_sqrt(double rate);
};

/// Lists invariant violations of a profile on sampled grids (empty when valid):
/// phi(0) = 0, phi strictly increasing, mu/lambda >= 0 for n in 1..horizon,
/// and phi(xi) <= M* xi on grid points xi >= M.
std::vector<std::string> profile_violations(const TotalAsymptoticProfile& profile, int horizon,
                                            const std::vector<double>& grid);

struct FixedSetDescriptor {
  enum class Kind { ScalarLine, SinglePoint };

  Kind kind = Kind::SinglePoint;
  Interval interval;   // ScalarLine: F = {(x, 0) : x in interval}
  ProductPoint point;  // SinglePoint: F = {point}

  static FixedSetDescriptor scalar_line(Interval iv) { return {Kind::ScalarLine, iv, {}}; }
  static FixedSetDescriptor single_point(ProductPoint p) { return {Kind::SinglePoint, {}, std::move(p)}; }

  /// A representative member: the point, or (clamp(scalar), 0) on the line.
  ProductPoint nearest_member(const ProductPoint& x) const;
};

enum class MappingKind { Identity, TAlpha, S, SF };

const char* to_string(MappingKind kind);

struct MappingSpec {
  MappingKind kind = MappingKind::Identity;
  double alpha = 0.5;
  double kappa = 0.5;
};

struct Mapping {
  std::string name;
  MappingSpec spec;
  std::function<ProductPoint(const ProductPoint&)> apply;
  /// Exact k-th power; empty when only k-fold application is available.
  std::function<ProductPoint(int, const ProductPoint&)> closed_power;
  AdmissibleSet domain;
  TotalAsymptoticProfile profile;
  /// Fix(T) when known in closed form; empty for the identity (everything is fixed).
  std::optional<FixedSetDescriptor> fixed_set;
};

/// A real map on an interval, used for the intermediate-sense defect.
struct ScalarMap {
  std::function<double(double)> fn;
  Interval domain;
};

// --- elementary maps ---------------------------------------------------

/// T_alpha(x1, x2, ...) = (0, alpha sqrt|x1|, alpha x2, ...). Requires ||v||_1 <= 1.
L1Vector apply_t_alpha(double alpha, const L1Vector& v);

/// T_alpha^k in closed form: k zeros, then alpha^k sqrt|x1|, alpha^k x2, ...
L1Vector power_t_alpha(double alpha, int k, const L1Vector& v);

/// True when T_alpha maps B_1 into itself. sup ||T_alpha v|| over B_1 is
/// 1.25 alpha (attained at |v1| = 1/4, ||v|| = 1), so this needs alpha <= 0.8.
bool t_alpha_preserves_ball(double alpha);

/// S(x, xbar) = (x, T_alpha xbar) on [0,1] x B_1.
ProductPoint apply_s(double alpha, const ProductPoint& x);

/// f_kappa(x) = kappa x sin(1/x), f(0) = 0, on C = [-1/pi, 1/pi].
double apply_f_kappa(double kappa, double x);

/// S_f(x, xbar) = (f_kappa(x), T_alpha xbar) on C x B_1.
ProductPoint apply_s_f(double kappa, double alpha, const ProductPoint& x);

Interval f_kappa_domain();
ScalarMap f_kappa_map(double kappa);

// --- mappings ------------------------------------------------------------

Mapping make_identity();
/// T_alpha acting on {0} x B_1.
Mapping make_t_alpha(double alpha);
Mapping make_s(double alpha);
/// lambda_n of the profile is the grid estimate of sigma_n for f_kappa.
Mapping make_s_f(double kappa, double alpha, int defect_grid_size = 2001);
Mapping make_mapping(const MappingSpec& spec);

/// T^k X via closed_power when present, else k-fold apply.
/// Throws DomainViolation when X or the result leaves map.domain.
ProductPoint nth_power(const Mapping& map, int k, const ProductPoint& x);

/// T^k X for X in map.domain without requiring the image to stay in the
/// domain. Certificates use this: the inequalities are statements about
/// ||T^n x - T^n y|| and hold even where T^n(K) is not inside K.
ProductPoint power_from_domain(const Mapping& map, int k, const ProductPoint& x);

// --- intermediate-sense defect -------------------------------------------

/// max(0, max over grid pairs |f^n x - f^n y| - |x - y|) on a uniform grid
/// of `grid_size` points over f.domain. A lower bound on sigma_n.
double estimate_intermediate_defect(const ScalarMap& f, int n, int grid_size);

/// Estimates for n = 1..n_max (entry n-1), sharing the iterated grid.
std::vector<double> intermediate_defect_table(const ScalarMap& f, int n_max, int grid_size);

/// Proven ceiling 2 kappa^n / pi for f_kappa.
double f_kappa_defect_envelope(double kappa, int n);

}  // namespace tanfp
