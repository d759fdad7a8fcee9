#pragma once

// Numerical certificates for the inequalities, bounds, witnesses and
// counterexamples around the explicit scheme. Every check is evaluated on
// concrete inputs; nothing here proves a limit.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tanfp/mapping_zoo.hpp"
#include "tanfp/scheme.hpp"
#include "tanfp/sequence_space.hpp"

namespace tanfp {

inline constexpr double kFormulaTolerance = 1e-12;
inline constexpr double kTrajectoryTolerance = 1e-10;

/// lhs <= rhs (or lhs == rhs for identities) up to `tolerance`.
struct InequalityCheck {
  std::string equation;
  std::vector<std::pair<std::string, double>> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = kFormulaTolerance;
  bool equality = false;
  bool satisfied = false;

  static InequalityCheck le(std::string equation, double lhs, double rhs, double tolerance,
                            std::vector<std::pair<std::string, double>> inputs = {});
  static InequalityCheck eq(std::string equation, double lhs, double rhs, double tolerance,
                            std::vector<std::pair<std::string, double>> inputs = {});
};

/// ||T^n x - T^n y|| <= d + mu_n phi(d) + lambda_n with d = ||I^n x - I^n y||.
InequalityCheck check_total_inequality(const Mapping& t, const Mapping& i, const TotalAsymptoticProfile& profile,
                                       const ProductPoint& x, const ProductPoint& y, int n,
                                       double tolerance = kFormulaTolerance);

/// Per grid point: phi(xi) <= M* xi when xi >= M, and phi(xi) <= phi(M) + M* xi always.
/// Throws MissingConstants when the profile has no (M, M*).
std::vector<InequalityCheck> check_linear_growth(const TotalAsymptoticProfile& profile,
                                                 const std::vector<double>& grid);

/// The derived power bounds for I^n (first) and T^n (second) from the
/// linear-growth constants of both profiles.
std::pair<InequalityCheck, InequalityCheck> prop33_bounds(const TotalAsymptoticProfile& profile_t,
                                                          const TotalAsymptoticProfile& profile_i,
                                                          const ProductPoint& x, const ProductPoint& y, int n,
                                                          const Mapping& t, const Mapping& i);

/// ||T^k x - T^k y||_1 = alpha^k (||x - y||_1 + |sqrt|x1| - sqrt|y1|| - |x1 - y1|).
InequalityCheck check_t_alpha_difference_identity(double alpha, int k, const L1Vector& x, const L1Vector& y);

/// |sqrt|x1| - sqrt|y1|| <= sqrt(||x1| - |y1||) <= sqrt(||x - y||_1), one check per link.
std::pair<InequalityCheck, InequalityCheck> check_sqrt_difference_bound(const L1Vector& x, const L1Vector& y);

struct WitnessResult {
  double alpha = 0.0;
  int k = 0;
  double lambda_k = 0.0;
  double x0 = 0.0;
  double x0_bound = 0.0;  // 4 alpha^(2k) / (9 (1 + lambda_k)^2)
  ProductPoint big_x0;    // (0, (x0, 0, ...))
  ProductPoint big_y0;    // (0, (x0/4, 0, ...))
  double base_distance = 0.0;   // ||X0 - Y0||, computed
  double image_distance = 0.0;  // ||S^k X0 - S^k Y0||, computed via nth_power
  double ratio = 0.0;           // 2 alpha^k / (3 sqrt x0)
  double ratio_direct = 0.0;    // image_distance / base_distance
  bool exceeds = false;         // ratio_direct > 1 + lambda_k
};

/// Pair showing S is not asymptotically nonexpansive at step k. x0 defaults
/// to half the feasibility bound; an explicit x0 must lie strictly inside it.
WitnessResult witness_non_asymptotic(double alpha, int k, double lambda_k, std::optional<double> x0 = std::nullopt);

struct CounterexampleRow {
  int n = 0;
  double t = 0.0;
  double combined_norm = 0.0;    // ||t_n x + (1 - t_n)(-x)||
  double difference_norm = 0.0;  // ||x - (-x)||
  double predicted_combined = 0.0;   // d |1 - 2/n|
  double predicted_difference = 0.0; // 2d
};

/// x_n = x, y_n = -x, t_n = 1/n for n = 1..N.
std::vector<CounterexampleRow> lemma23_counterexample(const ProductPoint& x, int N);

/// Coefficients of a_{n+1} <= (1 + b_n) a_n + c_n.
struct RecursionBound {
  std::function<double(int)> b;
  std::function<double(int)> c;

  struct Sums {
    double b = 0.0;
    double c = 0.0;
    double tail_b = 0.0;  // n > tail_start
    double tail_c = 0.0;
  };
  /// Sums over n = 1..horizon, and over tail_start < n <= horizon.
  Sums partial_sums(int horizon, int tail_start) const;
};

/// The b_n, c_n groups, kept separate so each can be checked on its own.
/// B = sum_i mutilde_i beta_i N_i*, C = sum_i (mutilde_i beta_i varphi_i(N_i) + lambdatilde_i beta_i).
struct RecursionTerms {
  double b_linear = 0.0;        // sum_i (mu_i alpha_i M_i* + mutilde_i alpha_i N_i* + alpha_i B)
  double b_mixed = 0.0;         // sum_i mu_i mutilde_i alpha_i M_i* N_i*
  double b_mu_beta = 0.0;       // (sum_i mu_i alpha_i M_i*) B
  double b_mutilde_beta = 0.0;  // (sum_i mutilde_i alpha_i N_i*) B
  double c_beta = 0.0;          // C sum_i alpha_i (1 + mu_i M_i*)(1 + mutilde_i N_i*)
  double c_i_family = 0.0;      // sum_i (mutilde_i alpha_i (1 + mu_i M_i*) varphi_i(N_i) + lambdatilde_i alpha_i (1 + mu_i M_i*))
  double c_t_family = 0.0;      // sum_i (mu_i alpha_i phi_i(M_i) + lambda_i alpha_i)

  double b() const { return b_linear + b_mixed + b_mu_beta + b_mutilde_beta; }
  double c() const { return c_beta + c_i_family + c_t_family; }
};

/// Throws MissingConstants if any profile lacks (M, M*).
RecursionTerms recursion_terms(const IterationConfig& cfg, int n);
RecursionBound compute_recursion_bound(const IterationConfig& cfg);

/// a_{n+1} <= (1 + b_n) a_n + c_n along the trace with a_n = ||x_n - p||.
/// Throws NotAFixedPoint if some family member moves p by more than 1e-12.
std::vector<InequalityCheck> check_run_bound(const Trace& trace, const ProductPoint& p, const RecursionBound& bound,
                                             const IterationConfig& cfg, double tolerance = kTrajectoryTolerance);

/// Finite-horizon diagnostic for families z_in with weights alpha_in:
/// d_hat = ||sum_i alpha_{i,H} z_{i,H}|| and how far norms and pairwise gaps are from
/// the limiting behaviour. A flag, not a proof.
struct SequenceDiagnostic {
  int horizon = 0;
  int tail_start = 0;
  double d_hat = 0.0;
  double max_norm_gap = 0.0;         // max_i | ||z_{i,H}|| - d_hat |
  double pairwise_at_horizon = 0.0;  // max_{i,j} ||z_{i,H} - z_{j,H}||
  double pairwise_tail_max = 0.0;    // same, maximised over the tail window
  bool pairwise_decayed = false;     // pairwise_at_horizon < threshold
  std::string note;
};

SequenceDiagnostic check_lemma_sequences(const std::vector<std::vector<ProductPoint>>& sequences,
                                      const WeightSchedule& weights, int horizon, double threshold = 1e-6);

}  // namespace tanfp
