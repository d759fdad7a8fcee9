#include "tanfp/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "tanfp/errors.hpp"

namespace tanfp {

InequalityCheck InequalityCheck::le(std::string equation, double lhs, double rhs, double tolerance,
                                    std::vector<std::pair<std::string, double>> inputs) {
  InequalityCheck c;
  c.equation = std::move(equation);
  c.inputs = std::move(inputs);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.tolerance = tolerance;
  c.satisfied = c.slack >= -tolerance;
  return c;
}

InequalityCheck InequalityCheck::eq(std::string equation, double lhs, double rhs, double tolerance,
                                    std::vector<std::pair<std::string, double>> inputs) {
  auto c = le(std::move(equation), lhs, rhs, tolerance, std::move(inputs));
  c.equality = true;
  c.satisfied = std::abs(c.slack) <= tolerance;
  return c;
}

InequalityCheck check_total_inequality(const Mapping& t, const Mapping& i, const TotalAsymptoticProfile& profile,
                                       const ProductPoint& x, const ProductPoint& y, int n, double tolerance) {
  const double lhs = distance(power_from_domain(t, n, x), power_from_domain(t, n, y));
  const double d = distance(power_from_domain(i, n, x), power_from_domain(i, n, y));
  const double rhs = d + profile.mu(n) * profile.phi(d) + profile.lambda(n);
  return InequalityCheck::le("total_asymptotic_I_nonexpansive", lhs, rhs, tolerance,
                             {{"n", n}, {"dist_I", d}, {"dist_xy", distance(x, y)}});
}

namespace {

const LinearBound& require_linear_bound(const TotalAsymptoticProfile& p, const char* who) {
  if (!p.linear_bound) throw Error(ErrorKind::MissingConstants, std::string(who) + " profile has no (M, M*)");
  return *p.linear_bound;
}

}  // namespace

std::vector<InequalityCheck> check_linear_growth(const TotalAsymptoticProfile& profile,
                                                 const std::vector<double>& grid) {
  const auto [m, slope] = require_linear_bound(profile, "linear growth:");
  const double phi_m = profile.phi(m);
  std::vector<InequalityCheck> out;
  for (double xi : grid) {
    const double phi = profile.phi(xi);
    if (xi >= m) {
      out.push_back(InequalityCheck::le("linear_growth", phi, slope * xi, kFormulaTolerance,
                                        {{"xi", xi}, {"M", m}, {"M_star", slope}}));
    }
    out.push_back(InequalityCheck::le("affine_growth", phi, phi_m + slope * xi, kFormulaTolerance,
                                      {{"xi", xi}, {"M", m}, {"M_star", slope}}));
  }
  return out;
}

std::pair<InequalityCheck, InequalityCheck> prop33_bounds(const TotalAsymptoticProfile& profile_t,
                                                          const TotalAsymptoticProfile& profile_i,
                                                          const ProductPoint& x, const ProductPoint& y, int n,
                                                          const Mapping& t, const Mapping& i) {
  const auto [m_t, slope_t] = require_linear_bound(profile_t, "T");
  const auto [m_i, slope_i] = require_linear_bound(profile_i, "I");
  const double d = distance(x, y);
  const double mu = profile_t.mu(n);
  const double lambda = profile_t.lambda(n);
  const double mu_i = profile_i.mu(n);
  const double lambda_i = profile_i.lambda(n);
  const double grow_t = 1.0 + mu * slope_t;
  const double grow_i = 1.0 + mu_i * slope_i;

  const double i_lhs = distance(power_from_domain(i, n, x), power_from_domain(i, n, y));
  const double i_rhs = grow_i * d + mu_i * profile_i.phi(m_i) + lambda_i;

  const double t_lhs = distance(power_from_domain(t, n, x), power_from_domain(t, n, y));
  const double t_rhs = grow_t * grow_i * d + mu_i * grow_t * profile_i.phi(m_i) + lambda_i * grow_t +
                       mu * profile_t.phi(m_t) + lambda;

  std::vector<std::pair<std::string, double>> inputs{{"n", n}, {"dist_xy", d}};
  return {InequalityCheck::le("I_power_linear_bound", i_lhs, i_rhs, kFormulaTolerance, inputs),
          InequalityCheck::le("T_power_linear_bound", t_lhs, t_rhs, kFormulaTolerance, inputs)};
}

InequalityCheck check_t_alpha_difference_identity(double alpha, int k, const L1Vector& x, const L1Vector& y) {
  const double direct = l1_norm(power_t_alpha(alpha, k, x) - power_t_alpha(alpha, k, y));
  const double x1 = x[0];
  const double y1 = y[0];
  const double formula = std::pow(alpha, k) * (l1_norm(x - y) + std::abs(std::sqrt(std::abs(x1)) - std::sqrt(std::abs(y1))) -
                                              std::abs(x1 - y1));
  return InequalityCheck::eq("t_alpha_power_difference", direct, formula, kFormulaTolerance,
                             {{"alpha", alpha}, {"k", k}, {"x1", x1}, {"y1", y1}});
}

std::pair<InequalityCheck, InequalityCheck> check_sqrt_difference_bound(const L1Vector& x, const L1Vector& y) {
  const double ax = std::abs(x[0]);
  const double ay = std::abs(y[0]);
  const double root_gap = std::abs(std::sqrt(ax) - std::sqrt(ay));
  const double middle = std::sqrt(std::abs(ax - ay));
  const double outer = std::sqrt(l1_norm(x - y));
  std::vector<std::pair<std::string, double>> inputs{{"x1", x[0]}, {"y1", y[0]}};
  return {InequalityCheck::le("sqrt_gap_le_sqrt_abs_gap", root_gap, middle, kFormulaTolerance, inputs),
          InequalityCheck::le("sqrt_abs_gap_le_sqrt_norm", middle, outer, kFormulaTolerance, inputs)};
}

WitnessResult witness_non_asymptotic(double alpha, int k, double lambda_k, std::optional<double> x0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::ValidationError, "witness: alpha must lie in (0, 1)");
  if (k < 1) throw Error(ErrorKind::ValidationError, "witness: k must be >= 1");
  if (!(lambda_k > 0.0)) throw Error(ErrorKind::ValidationError, "witness: lambda_k must be positive");

  WitnessResult w;
  w.alpha = alpha;
  w.k = k;
  w.lambda_k = lambda_k;
  const double ak = std::pow(alpha, k);
  w.x0_bound = 4.0 * ak * ak / (9.0 * (1.0 + lambda_k) * (1.0 + lambda_k));
  w.x0 = x0.value_or(0.5 * w.x0_bound);
  if (!(w.x0 > 0.0 && w.x0 < w.x0_bound)) {
    std::ostringstream os;
    os.precision(17);
    os << "witness: x0 = " << w.x0 << " must lie in (0, " << w.x0_bound << ")";
    throw Error(ErrorKind::ValidationError, os.str());
  }

  w.big_x0 = {0.0, L1Vector{w.x0}};
  w.big_y0 = {0.0, L1Vector{w.x0 / 4.0}};
  const Mapping s = make_s(alpha);
  w.base_distance = distance(w.big_x0, w.big_y0);
  w.image_distance = distance(nth_power(s, k, w.big_x0), nth_power(s, k, w.big_y0));
  w.ratio = 2.0 * ak / (3.0 * std::sqrt(w.x0));
  w.ratio_direct = w.image_distance / w.base_distance;
  w.exceeds = w.ratio_direct > 1.0 + lambda_k;
  return w;
}

std::vector<CounterexampleRow> lemma23_counterexample(const ProductPoint& x, int N) {
  if (N < 2) throw Error(ErrorKind::ValidationError, "counterexample: N must be >= 2");
  const double d = product_norm(x);
  if (!(d > 0.0)) throw Error(ErrorKind::ValidationError, "counterexample: ||x|| must be positive");
  const ProductPoint y = -x;
  std::vector<CounterexampleRow> rows;
  rows.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    CounterexampleRow r;
    r.n = n;
    r.t = 1.0 / n;
    r.combined_norm = product_norm(r.t * x + (1.0 - r.t) * y);
    r.difference_norm = distance(x, y);
    r.predicted_combined = d * std::abs(1.0 - 2.0 / n);
    r.predicted_difference = 2.0 * d;
    rows.push_back(r);
  }
  return rows;
}

RecursionBound::Sums RecursionBound::partial_sums(int horizon, int tail_start) const {
  Sums s;
  for (int n = 1; n <= horizon; ++n) {
    const double bn = b(n);
    const double cn = c(n);
    s.b += bn;
    s.c += cn;
    if (n > tail_start) {
      s.tail_b += bn;
      s.tail_c += cn;
    }
  }
  return s;
}

RecursionTerms recursion_terms(const IterationConfig& cfg, int n) {
  const auto m = cfg.t_family.size();
  if (cfg.i_family.size() != m) throw Error(ErrorKind::LengthMismatch, "t_family and i_family sizes differ");

  struct Row {
    double alpha, beta, mu, lambda, mu_i, lambda_i, slope_t, slope_i, phi_m, varphi_n;
  };
  std::vector<Row> rows;
  rows.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& pt = cfg.t_family[k].profile;
    const auto& pi = cfg.i_family[k].profile;
    const auto [m_t, slope_t] = require_linear_bound(pt, cfg.t_family[k].name.c_str());
    const auto [m_i, slope_i] = require_linear_bound(pi, cfg.i_family[k].name.c_str());
    const int j = static_cast<int>(k) + 1;
    rows.push_back({cfg.alpha.value(j, n), cfg.beta.value(j, n), pt.mu(n), pt.lambda(n), pi.mu(n), pi.lambda(n),
                    slope_t, slope_i, pt.phi(m_t), pi.phi(m_i)});
  }

  // Inner sums over the beta stage; their index runs independently of the outer one.
  double big_b = 0.0;
  double big_c = 0.0;
  for (const auto& r : rows) {
    big_b += r.mu_i * r.beta * r.slope_i;
    big_c += r.mu_i * r.beta * r.varphi_n + r.lambda_i * r.beta;
  }

  RecursionTerms t;
  double sum_mu_alpha_slope = 0.0;
  double sum_mui_alpha_slope = 0.0;
  double sum_growth = 0.0;
  for (const auto& r : rows) {
    t.b_linear += r.mu * r.alpha * r.slope_t + r.mu_i * r.alpha * r.slope_i + r.alpha * big_b;
    t.b_mixed += r.mu * r.mu_i * r.alpha * r.slope_t * r.slope_i;
    sum_mu_alpha_slope += r.mu * r.alpha * r.slope_t;
    sum_mui_alpha_slope += r.mu_i * r.alpha * r.slope_i;

    const double grow_t = 1.0 + r.mu * r.slope_t;
    sum_growth += r.alpha * grow_t * (1.0 + r.mu_i * r.slope_i);
    t.c_i_family += r.mu_i * r.alpha * grow_t * r.varphi_n + r.lambda_i * r.alpha * grow_t;
    t.c_t_family += r.mu * r.alpha * r.phi_m + r.lambda * r.alpha;
  }
  t.b_mu_beta = sum_mu_alpha_slope * big_b;
  t.b_mutilde_beta = sum_mui_alpha_slope * big_b;
  t.c_beta = big_c * sum_growth;
  return t;
}

RecursionBound compute_recursion_bound(const IterationConfig& cfg) {
  recursion_terms(cfg, 1);  // surfaces MissingConstants up front
  auto shared = std::make_shared<const IterationConfig>(cfg);
  return {[shared](int n) { return recursion_terms(*shared, n).b(); },
          [shared](int n) { return recursion_terms(*shared, n).c(); }};
}

std::vector<InequalityCheck> check_run_bound(const Trace& trace, const ProductPoint& p, const RecursionBound& bound,
                                             const IterationConfig& cfg, double tolerance) {
  for (const auto* fam : {&cfg.t_family, &cfg.i_family}) {
    for (const auto& map : *fam) {
      const double moved = distance(map.apply(p), p);
      if (moved > 1e-12) {
        std::ostringstream os;
        os << map.name << " moves the reference point by " << moved;
        throw Error(ErrorKind::NotAFixedPoint, os.str());
      }
    }
  }

  std::vector<InequalityCheck> out;
  out.reserve(trace.records.size());
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const auto& rec = trace.records[k];
    const ProductPoint& next = k + 1 < trace.records.size() ? trace.records[k + 1].x : trace.final_x;
    const double a_n = distance(rec.x, p);
    const double a_next = distance(next, p);
    const double bn = bound.b(rec.n);
    const double cn = bound.c(rec.n);
    out.push_back(InequalityCheck::le("recursion_bound", a_next, (1.0 + bn) * a_n + cn, tolerance,
                                      {{"n", rec.n}, {"a_n", a_n}, {"b_n", bn}, {"c_n", cn}}));
  }
  return out;
}

SequenceDiagnostic check_lemma_sequences(const std::vector<std::vector<ProductPoint>>& sequences,
                                      const WeightSchedule& weights, int horizon, double threshold) {
  if (sequences.empty() || static_cast<int>(sequences.size()) != weights.width()) {
    std::ostringstream os;
    os << sequences.size() << " sequences for a schedule of width " << weights.width();
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  if (horizon < 1) throw Error(ErrorKind::ValidationError, "horizon must be >= 1");
  for (const auto& s : sequences) {
    if (static_cast<int>(s.size()) < horizon) throw Error(ErrorKind::LengthMismatch, "sequence shorter than horizon");
  }

  const auto at = [&](std::size_t i, int n) -> const ProductPoint& { return sequences[i][static_cast<std::size_t>(n - 1)]; };
  const auto max_pairwise = [&](int n) {
    double best = 0.0;
    for (std::size_t i = 0; i < sequences.size(); ++i)
      for (std::size_t j = i + 1; j < sequences.size(); ++j) best = std::max(best, distance(at(i, n), at(j, n)));
    return best;
  };

  SequenceDiagnostic d;
  d.horizon = horizon;
  d.tail_start = std::max(1, horizon - horizon / 10);
  std::vector<ProductPoint> last;
  for (std::size_t i = 0; i < sequences.size(); ++i) last.push_back(at(i, horizon));
  d.d_hat = product_norm(convex_combine(weights.row(horizon), last));
  for (const auto& z : last) d.max_norm_gap = std::max(d.max_norm_gap, std::abs(product_norm(z) - d.d_hat));
  d.pairwise_at_horizon = max_pairwise(horizon);
  for (int n = d.tail_start; n <= horizon; ++n) d.pairwise_tail_max = std::max(d.pairwise_tail_max, max_pairwise(n));
  d.pairwise_decayed = d.pairwise_at_horizon < threshold;
  d.note = "finite-horizon diagnostic on n <= " + std::to_string(horizon) + "; not a proof of the limit statements";
  return d;
}

}  // namespace tanfp
