#include "tanfp/mapping_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "tanfp/errors.hpp"

namespace tanfp {

namespace {

constexpr int kDefectTableHorizon = 256;

void require_unit_parameter(const char* name, double value) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream os;
    os << name << " = " << value << " must lie in (0, 1)";
    throw Error(ErrorKind::ValidationError, os.str());
  }
}

void require_in_ball(const L1Vector& v) {
  const double norm = l1_norm(v);
  if (!(norm <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "||v||_1 = " << norm << " exceeds 1";
    throw Error(ErrorKind::DomainViolation, os.str());
  }
}

void require_in(const ProductPoint& x, const AdmissibleSet& k, const std::string& who) {
  if (!in_set(x, k)) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": point (scalar " << x.scalar << ", ||vec||_1 " << l1_norm(x.vec) << ") outside ["
       << k.scalar_interval.lo << ", " << k.scalar_interval.hi << "] x B(" << k.ball_radius << ")";
    throw Error(ErrorKind::DomainViolation, os.str());
  }
}

double sqrt_plus_identity(double t) { return t + std::sqrt(t); }

}  // namespace

TotalAsymptoticProfile TotalAsymptoticProfile::nonexpansive() {
  return {[](int) { return 0.0; }, [](int) { return 0.0; }, [](double t) { return t; }, LinearBound{1.0, 1.0}};
}

TotalAsymptoticProfile TotalAsymptoticProfile::geometric_sqrt(double rate) {
  return {[rate](int n) { return std::pow(rate, n); }, [](int) { return 0.0; }, sqrt_plus_identity,
          LinearBound{1.0, 2.0}};
}

std::vector<std::string> profile_violations(const TotalAsymptoticProfile& profile, int horizon,
                                            const std::vector<double>& grid) {
  std::vector<std::string> out;
  if (profile.phi(0.0) != 0.0) out.emplace_back("phi(0) != 0");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] > sorted[i - 1] && !(profile.phi(sorted[i]) > profile.phi(sorted[i - 1]))) {
      std::ostringstream os;
      os << "phi not strictly increasing between " << sorted[i - 1] << " and " << sorted[i];
      out.push_back(os.str());
    }
  }
  for (int n = 1; n <= horizon; ++n) {
    if (!(profile.mu(n) >= 0.0)) out.push_back("mu_" + std::to_string(n) + " < 0");
    if (!(profile.lambda(n) >= 0.0)) out.push_back("lambda_" + std::to_string(n) + " < 0");
  }
  if (profile.linear_bound) {
    const auto [m, slope] = *profile.linear_bound;
    for (double xi : sorted) {
      if (xi >= m && profile.phi(xi) > slope * xi) {
        std::ostringstream os;
        os << "phi(" << xi << ") > M* xi";
        out.push_back(os.str());
      }
    }
  }
  return out;
}

ProductPoint FixedSetDescriptor::nearest_member(const ProductPoint& x) const {
  if (kind == Kind::SinglePoint) return point;
  return {std::clamp(x.scalar, interval.lo, interval.hi), L1Vector{}};
}

const char* to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::Identity: return "identity";
    case MappingKind::TAlpha: return "t_alpha";
    case MappingKind::S: return "s";
    case MappingKind::SF: return "s_f";
  }
  return "?";
}

L1Vector apply_t_alpha(double alpha, const L1Vector& v) {
  require_in_ball(v);
  if (v.size() == 0) return {};
  std::vector<double> out(v.size() + 1, 0.0);
  out[1] = alpha * std::sqrt(std::abs(v[0]));
  for (std::size_t j = 1; j < v.size(); ++j) out[j + 1] = alpha * v[j];
  return L1Vector(std::move(out));
}

L1Vector power_t_alpha(double alpha, int k, const L1Vector& v) {
  if (k < 1) throw Error(ErrorKind::ValidationError, "power_t_alpha needs k >= 1");
  require_in_ball(v);
  if (v.size() == 0) return {};
  const auto shift = static_cast<std::size_t>(k);
  const double ak = std::pow(alpha, k);
  std::vector<double> out(v.size() + shift, 0.0);
  out[shift] = ak * std::sqrt(std::abs(v[0]));
  for (std::size_t j = 1; j < v.size(); ++j) out[shift + j] = ak * v[j];
  return L1Vector(std::move(out));
}

bool t_alpha_preserves_ball(double alpha) { return alpha > 0.0 && alpha <= 0.8; }

ProductPoint apply_s(double alpha, const ProductPoint& x) {
  require_in(x, AdmissibleSet::unit_box_ball(), "S");
  return {x.scalar, apply_t_alpha(alpha, x.vec)};
}

Interval f_kappa_domain() { return {-1.0 / std::numbers::pi, 1.0 / std::numbers::pi}; }

double apply_f_kappa(double kappa, double x) {
  if (!f_kappa_domain().contains(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "f_kappa: |x| = " << std::abs(x) << " exceeds 1/pi";
    throw Error(ErrorKind::DomainViolation, os.str());
  }
  if (x == 0.0) return 0.0;
  return kappa * x * std::sin(1.0 / x);
}

ProductPoint apply_s_f(double kappa, double alpha, const ProductPoint& x) {
  require_in(x, {f_kappa_domain(), 1.0}, "S_f");
  return {apply_f_kappa(kappa, x.scalar), apply_t_alpha(alpha, x.vec)};
}

ScalarMap f_kappa_map(double kappa) {
  return {[kappa](double x) { return apply_f_kappa(kappa, x); }, f_kappa_domain()};
}

Mapping make_identity() {
  Mapping m;
  m.name = "identity";
  m.spec = {MappingKind::Identity, 0.0, 0.0};
  m.apply = [](const ProductPoint& x) { return x; };
  m.closed_power = [](int, const ProductPoint& x) { return x; };
  m.domain = AdmissibleSet::everything();
  m.profile = TotalAsymptoticProfile::nonexpansive();
  return m;
}

Mapping make_t_alpha(double alpha) {
  require_unit_parameter("alpha", alpha);
  Mapping m;
  m.name = "t_alpha(" + std::to_string(alpha) + ")";
  m.spec = {MappingKind::TAlpha, alpha, 0.0};
  m.domain = {{0.0, 0.0}, 1.0};
  m.apply = [alpha, dom = m.domain](const ProductPoint& x) {
    require_in(x, dom, "T_alpha");
    return ProductPoint{0.0, apply_t_alpha(alpha, x.vec)};
  };
  m.closed_power = [alpha, dom = m.domain](int k, const ProductPoint& x) {
    require_in(x, dom, "T_alpha");
    return ProductPoint{0.0, power_t_alpha(alpha, k, x.vec)};
  };
  m.profile = TotalAsymptoticProfile::geometric_sqrt(alpha);
  m.fixed_set = FixedSetDescriptor::single_point({});
  return m;
}

Mapping make_s(double alpha) {
  require_unit_parameter("alpha", alpha);
  Mapping m;
  m.name = "s(" + std::to_string(alpha) + ")";
  m.spec = {MappingKind::S, alpha, 0.0};
  m.domain = AdmissibleSet::unit_box_ball();
  m.apply = [alpha](const ProductPoint& x) { return apply_s(alpha, x); };
  m.closed_power = [alpha](int k, const ProductPoint& x) {
    require_in(x, AdmissibleSet::unit_box_ball(), "S");
    return ProductPoint{x.scalar, power_t_alpha(alpha, k, x.vec)};
  };
  m.profile = TotalAsymptoticProfile::geometric_sqrt(alpha);
  m.fixed_set = FixedSetDescriptor::scalar_line({0.0, 1.0});
  return m;
}

Mapping make_s_f(double kappa, double alpha, int defect_grid_size) {
  require_unit_parameter("kappa", kappa);
  require_unit_parameter("alpha", alpha);
  Mapping m;
  m.name = "s_f(" + std::to_string(kappa) + ", " + std::to_string(alpha) + ")";
  m.spec = {MappingKind::SF, alpha, kappa};
  m.domain = {f_kappa_domain(), 1.0};
  m.apply = [kappa, alpha](const ProductPoint& x) { return apply_s_f(kappa, alpha, x); };
  m.closed_power = [kappa, alpha, dom = m.domain](int k, const ProductPoint& x) {
    require_in(x, dom, "S_f");
    double s = x.scalar;
    for (int i = 0; i < k; ++i) s = apply_f_kappa(kappa, s);
    return ProductPoint{s, power_t_alpha(alpha, k, x.vec)};
  };

  auto table = std::make_shared<const std::vector<double>>(
      intermediate_defect_table(f_kappa_map(kappa), kDefectTableHorizon, defect_grid_size));
  m.profile = TotalAsymptoticProfile::geometric_sqrt(alpha);
  m.profile.lambda = [table, kappa, defect_grid_size](int n) {
    if (n >= 1 && static_cast<std::size_t>(n) <= table->size()) return (*table)[static_cast<std::size_t>(n - 1)];
    return estimate_intermediate_defect(f_kappa_map(kappa), n, defect_grid_size);
  };
  m.fixed_set = FixedSetDescriptor::single_point({});
  return m;
}

Mapping make_mapping(const MappingSpec& spec) {
  switch (spec.kind) {
    case MappingKind::Identity: return make_identity();
    case MappingKind::TAlpha: return make_t_alpha(spec.alpha);
    case MappingKind::S: return make_s(spec.alpha);
    case MappingKind::SF: return make_s_f(spec.kappa, spec.alpha);
  }
  throw Error(ErrorKind::ValidationError, "unknown mapping kind");
}

ProductPoint power_from_domain(const Mapping& map, int k, const ProductPoint& x) {
  if (k < 1) throw Error(ErrorKind::ValidationError, "nth_power needs k >= 1");
  require_in(x, map.domain, map.name);
  if (map.closed_power) return map.closed_power(k, x);
  ProductPoint out = x;
  for (int i = 0; i < k; ++i) out = map.apply(out);
  return out;
}

ProductPoint nth_power(const Mapping& map, int k, const ProductPoint& x) {
  ProductPoint out = power_from_domain(map, k, x);
  require_in(out, map.domain, map.name + "^" + std::to_string(k));
  return out;
}

namespace {

std::vector<double> uniform_grid(const Interval& iv, int grid_size) {
  if (grid_size < 2) throw Error(ErrorKind::ValidationError, "defect grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(grid_size));
  const double h = (iv.hi - iv.lo) / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i) g[static_cast<std::size_t>(i)] = iv.lo + i * h;
  g.back() = iv.hi;
  return g;
}

// max over i < j of |v_j - v_i| - (g_j - g_i) for ascending g, in one pass:
// |a| = max(a, -a) splits the pair term into two prefix-minimum problems.
double max_pair_excess(const std::vector<double>& g, const std::vector<double>& v) {
  double best = 0.0;  // i == j contributes 0, and the estimate is clamped at 0 anyway
  double min_plus = v[0] - g[0];
  double min_minus = -v[0] - g[0];
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double hp = v[j] - g[j];
    const double hm = -v[j] - g[j];
    best = std::max({best, hp - min_plus, hm - min_minus});
    min_plus = std::min(min_plus, hp);
    min_minus = std::min(min_minus, hm);
  }
  return best;
}

}  // namespace

double estimate_intermediate_defect(const ScalarMap& f, int n, int grid_size) {
  if (n < 1) throw Error(ErrorKind::ValidationError, "defect order n must be >= 1");
  const auto g = uniform_grid(f.domain, grid_size);
  auto v = g;
  for (int i = 0; i < n; ++i) {
    for (auto& x : v) x = f.fn(x);
  }
  return max_pair_excess(g, v);
}

std::vector<double> intermediate_defect_table(const ScalarMap& f, int n_max, int grid_size) {
  const auto g = uniform_grid(f.domain, grid_size);
  auto v = g;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) {
    for (auto& x : v) x = f.fn(x);
    out.push_back(max_pair_excess(g, v));
  }
  return out;
}

double f_kappa_defect_envelope(double kappa, int n) { return 2.0 * std::pow(kappa, n) / std::numbers::pi; }

}  // namespace tanfp
