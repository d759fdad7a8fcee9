#pragma once

// The two-stage explicit iteration
//
//   y_n     = beta_0n x_n  + sum_i beta_in  I_i^n x_n
//   x_{n+1} = alpha_0n x_n + sum_i alpha_in T_i^n y_n
//
// and its variant with error terms (extra weights on u_n, v_n).

#include <functional>
#include <optional>
#include <vector>

#include "tanfp/mapping_zoo.hpp"
#include "tanfp/sequence_space.hpp"

namespace tanfp {

/// Box (alpha_*, alpha^*) every weight must stay inside.
struct WeightBounds {
  double lower = 0.01;
  double upper = 0.99;
};

enum class ScheduleKind { Constant, Custom };

/// Per-step convex weights w(j, n), j = 0..width-1, n >= 1.
///
/// Custom schedules hold a finite list of rows; step n uses row n-1 and the
/// last row repeats forever, so validating the rows validates every n.
class WeightSchedule {
 public:
  static WeightSchedule constant(int width, WeightBounds bounds);
  static WeightSchedule custom(std::vector<std::vector<double>> rows, WeightBounds bounds);

  ScheduleKind kind() const noexcept { return kind_; }
  int width() const noexcept { return width_; }
  WeightBounds bounds() const noexcept { return bounds_; }

  double value(int j, int n) const;
  std::vector<double> row(int n) const;

 private:
  WeightSchedule() = default;
  void validate() const;

  ScheduleKind kind_ = ScheduleKind::Constant;
  int width_ = 0;
  WeightBounds bounds_;
  std::vector<std::vector<double>> rows_;
};

/// Schedule for a family of size m: width m+1, or m+2 with error terms.
/// Throws InfeasibleSchedule (bounds/box) or WeightSumViolation (simplex).
WeightSchedule make_schedule(ScheduleKind kind, int m, WeightBounds bounds,
                             std::vector<std::vector<double>> rows = {}, bool with_error_terms = false);

struct ErrorTerms {
  ProductPoint u;
  ProductPoint v;
};

struct IterationConfig {
  std::vector<Mapping> t_family;
  std::vector<Mapping> i_family;
  WeightSchedule alpha = WeightSchedule::constant(2, {});
  WeightSchedule beta = WeightSchedule::constant(2, {});
  ProductPoint x0;
  int max_steps = 10000;
  double tol = 1e-8;
  std::optional<FixedSetDescriptor> fixed_set;
  /// Reference fixed point for dist_to_ref; derived from fixed_set when absent.
  std::optional<ProductPoint> reference_point;
  /// Error sequences (u_n, v_n); when set, runs use the with-errors step.
  std::function<ErrorTerms(int)> error_terms;

  int family_size() const noexcept { return static_cast<int>(t_family.size()); }
  AdmissibleSet common_domain() const;
  /// Checks sizes, schedule widths, x0 membership. Throws ValidationError/LengthMismatch.
  void validate() const;
  std::optional<ProductPoint> resolved_reference() const;
};

/// I_i = T_i with T_i's own profile, and T_i re-profiled against itself
/// (mu_in, lambda = 0, phi(t) = t). Running the scheme with these families
/// gives the reduced recursion where both stages use T_i^n.
struct SchemeFamilies {
  std::vector<Mapping> t_family;
  std::vector<Mapping> i_family;
};
SchemeFamilies self_paired_families(const std::vector<Mapping>& t_family);

/// Common fixed set of the families when it can be read off the zoo
/// descriptors, restricted to `domain`; empty otherwise.
std::optional<FixedSetDescriptor> derive_common_fixed_set(const std::vector<Mapping>& t_family,
                                                          const std::vector<Mapping>& i_family,
                                                          const AdmissibleSet& domain);

struct StepResult {
  ProductPoint next;  // x_{n+1}
  ProductPoint y;     // y_n
};

StepResult step(const ProductPoint& x, int n, const IterationConfig& cfg);
StepResult step_with_errors(const ProductPoint& x, int n, const IterationConfig& cfg, const ProductPoint& u,
                            const ProductPoint& v);

struct TraceRecord {
  int n = 0;
  ProductPoint x;
  ProductPoint y;
  double step_norm = 0.0;  // ||x_{n+1} - x_n||
  std::vector<double> t_defects;  // ||x_n - T_i^n x_n||
  std::vector<double> i_defects;  // ||x_n - I_i^n x_n||
  std::optional<double> dist_to_fixset;
  std::optional<double> dist_to_ref;
};

enum class Termination { Tolerance, MaxSteps };

const char* to_string(Termination t);

struct Trace {
  std::vector<TraceRecord> records;  // n = 1, 2, ... in order
  Termination terminated_by = Termination::MaxSteps;
  ProductPoint final_x;  // x_{N+1} after the last recorded step

  /// Running minimum of dist_to_fixset (the liminf diagnostic); empty without a fixed set.
  std::optional<double> min_dist_to_fixset() const;
};

/// Iterates from cfg.x0 (used as x_1) for n = 1, 2, ... until step_norm < tol
/// or n == max_steps. Errors are rethrown with the step index prepended.
Trace run(const IterationConfig& cfg);

double distance_to_fixset(const ProductPoint& x, const FixedSetDescriptor& f);

}  // namespace tanfp
