#include "tanfp/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tanfp/errors.hpp"

namespace tanfp {

// --- schedules -------------------------------------------------------------

WeightSchedule WeightSchedule::constant(int width, WeightBounds bounds) {
  WeightSchedule s;
  s.kind_ = ScheduleKind::Constant;
  s.width_ = width;
  s.bounds_ = bounds;
  s.validate();
  return s;
}

WeightSchedule WeightSchedule::custom(std::vector<std::vector<double>> rows, WeightBounds bounds) {
  WeightSchedule s;
  s.kind_ = ScheduleKind::Custom;
  s.width_ = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  s.bounds_ = bounds;
  s.rows_ = std::move(rows);
  s.validate();
  return s;
}

void WeightSchedule::validate() const {
  const auto [lo, hi] = bounds_;
  if (!(0.0 < lo && lo < hi && hi < 1.0)) {
    std::ostringstream os;
    os << "bounds (" << lo << ", " << hi << ") must satisfy 0 < lower < upper < 1";
    throw Error(ErrorKind::InfeasibleSchedule, os.str());
  }
  if (width_ < 2) throw Error(ErrorKind::InfeasibleSchedule, "a schedule needs at least 2 weights per step");

  if (kind_ == ScheduleKind::Constant) {
    const double w = 1.0 / width_;
    if (w < lo || w > hi) {
      std::ostringstream os;
      os << "constant weight 1/" << width_ << " = " << w << " outside [" << lo << ", " << hi << "]";
      throw Error(ErrorKind::InfeasibleSchedule, os.str());
    }
    return;
  }

  if (rows_.empty()) throw Error(ErrorKind::InfeasibleSchedule, "custom schedule has no rows");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r];
    if (static_cast<int>(row.size()) != width_) {
      std::ostringstream os;
      os << "row " << r << " has " << row.size() << " weights, expected " << width_;
      throw Error(ErrorKind::LengthMismatch, os.str());
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < lo || row[j] > hi) {
        std::ostringstream os;
        os << "weight (j=" << j << ", row " << r << ") = " << row[j] << " outside [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::InfeasibleSchedule, os.str());
      }
    }
    try {
      require_simplex(row);
    } catch (const Error& e) {
      throw Error(ErrorKind::WeightSumViolation, "row " + std::to_string(r) + ": " + e.detail());
    }
  }
}

double WeightSchedule::value(int j, int n) const {
  if (j < 0 || j >= width_) throw Error(ErrorKind::LengthMismatch, "weight index out of range");
  if (kind_ == ScheduleKind::Constant) return 1.0 / width_;
  const auto r = std::min(static_cast<std::size_t>(std::max(n, 1) - 1), rows_.size() - 1);
  return rows_[r][static_cast<std::size_t>(j)];
}

std::vector<double> WeightSchedule::row(int n) const {
  std::vector<double> out(static_cast<std::size_t>(width_));
  for (int j = 0; j < width_; ++j) out[static_cast<std::size_t>(j)] = value(j, n);
  return out;
}

WeightSchedule make_schedule(ScheduleKind kind, int m, WeightBounds bounds, std::vector<std::vector<double>> rows,
                             bool with_error_terms) {
  if (m < 1) throw Error(ErrorKind::InfeasibleSchedule, "family size m must be >= 1");
  const int width = m + 1 + (with_error_terms ? 1 : 0);
  if (kind == ScheduleKind::Constant) return WeightSchedule::constant(width, bounds);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != width) {
      std::ostringstream os;
      os << "custom row has " << row.size() << " weights; family size " << m << " needs " << width;
      throw Error(ErrorKind::LengthMismatch, os.str());
    }
  }
  return WeightSchedule::custom(std::move(rows), bounds);
}

// --- config ---------------------------------------------------------------

AdmissibleSet IterationConfig::common_domain() const {
  AdmissibleSet k = AdmissibleSet::everything();
  for (const auto& m : t_family) k = intersect(k, m.domain);
  for (const auto& m : i_family) k = intersect(k, m.domain);
  return k;
}

void IterationConfig::validate() const {
  const int m = family_size();
  if (m < 1) throw Error(ErrorKind::ValidationError, "t_family is empty");
  if (static_cast<int>(i_family.size()) != m) {
    std::ostringstream os;
    os << "t_family has " << m << " mappings, i_family has " << i_family.size();
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  const int width = m + 1 + (error_terms ? 1 : 0);
  if (alpha.width() != width || beta.width() != width) {
    std::ostringstream os;
    os << "schedules carry " << alpha.width() << "/" << beta.width() << " weights, family of size " << m
       << (error_terms ? " with error terms" : "") << " needs " << width;
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  if (max_steps < 1) throw Error(ErrorKind::ValidationError, "max_steps must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::ValidationError, "tol must be positive");
  if (!in_set(x0, common_domain())) throw Error(ErrorKind::DomainViolation, "x0 is outside the common domain");
}

std::optional<ProductPoint> IterationConfig::resolved_reference() const {
  if (reference_point) return reference_point;
  if (!fixed_set) return std::nullopt;
  return fixed_set->nearest_member({x0.scalar, L1Vector{}});
}

SchemeFamilies self_paired_families(const std::vector<Mapping>& t_family) {
  SchemeFamilies out;
  out.i_family = t_family;
  for (const auto& t : t_family) {
    Mapping self = t;
    self.profile = {t.profile.mu, [](int) { return 0.0; }, [](double s) { return s; }, LinearBound{1.0, 1.0}};
    out.t_family.push_back(std::move(self));
  }
  return out;
}

namespace {

bool line_contains(const FixedSetDescriptor& line, const ProductPoint& p) {
  return l1_norm(p.vec) == 0.0 && line.interval.contains(p.scalar);
}

}  // namespace

std::optional<FixedSetDescriptor> derive_common_fixed_set(const std::vector<Mapping>& t_family,
                                                          const std::vector<Mapping>& i_family,
                                                          const AdmissibleSet& domain) {
  std::vector<FixedSetDescriptor> sets;
  for (const auto* fam : {&t_family, &i_family}) {
    for (const auto& m : *fam) {
      if (m.spec.kind == MappingKind::Identity) continue;
      if (!m.fixed_set) return std::nullopt;
      sets.push_back(*m.fixed_set);
    }
  }
  if (sets.empty()) return std::nullopt;

  const auto single = std::find_if(sets.begin(), sets.end(),
                                   [](const auto& s) { return s.kind == FixedSetDescriptor::Kind::SinglePoint; });
  if (single != sets.end()) {
    const ProductPoint p = single->point;
    for (const auto& s : sets) {
      const bool ok = s.kind == FixedSetDescriptor::Kind::SinglePoint ? s.point == p : line_contains(s, p);
      if (!ok) return std::nullopt;
    }
    if (!in_set(p, domain)) return std::nullopt;
    return FixedSetDescriptor::single_point(p);
  }

  Interval iv = domain.scalar_interval;
  for (const auto& s : sets) {
    iv.lo = std::max(iv.lo, s.interval.lo);
    iv.hi = std::min(iv.hi, s.interval.hi);
  }
  if (iv.lo > iv.hi) return std::nullopt;
  return FixedSetDescriptor::scalar_line(iv);
}

// --- iteration ------------------------------------------------------------

namespace {

void require_domain(const ProductPoint& p, const AdmissibleSet& k, const char* what) {
  if (!in_set(p, k)) {
    std::ostringstream os;
    os.precision(17);
    os << what << " left the admissible set (scalar " << p.scalar << ", ||vec||_1 " << l1_norm(p.vec) << ")";
    throw Error(ErrorKind::DomainViolation, os.str());
  }
}

StepResult step_impl(const ProductPoint& x, int n, const IterationConfig& cfg, const ProductPoint* u,
                     const ProductPoint* v) {
  if (n < 1) throw Error(ErrorKind::ValidationError, "step index n must be >= 1");
  const auto domain = cfg.common_domain();
  require_domain(x, domain, "x_n");
  const auto m = cfg.t_family.size();

  std::vector<ProductPoint> terms;
  terms.reserve(m + 2);
  terms.push_back(x);
  for (const auto& map : cfg.i_family) terms.push_back(nth_power(map, n, x));
  if (v != nullptr) terms.push_back(*v);
  ProductPoint y = convex_combine(cfg.beta.row(n), terms);
  require_domain(y, domain, "y_n");

  terms.clear();
  terms.push_back(x);
  for (const auto& map : cfg.t_family) terms.push_back(nth_power(map, n, y));
  if (u != nullptr) terms.push_back(*u);
  ProductPoint next = convex_combine(cfg.alpha.row(n), terms);
  require_domain(next, domain, "x_{n+1}");

  return {std::move(next), std::move(y)};
}

}  // namespace

StepResult step(const ProductPoint& x, int n, const IterationConfig& cfg) {
  return step_impl(x, n, cfg, nullptr, nullptr);
}

StepResult step_with_errors(const ProductPoint& x, int n, const IterationConfig& cfg, const ProductPoint& u,
                            const ProductPoint& v) {
  const auto domain = cfg.common_domain();
  require_domain(u, domain, "u_n");
  require_domain(v, domain, "v_n");
  return step_impl(x, n, cfg, &u, &v);
}

const char* to_string(Termination t) { return t == Termination::Tolerance ? "tolerance" : "max_steps"; }

std::optional<double> Trace::min_dist_to_fixset() const {
  std::optional<double> best;
  for (const auto& r : records) {
    if (r.dist_to_fixset && (!best || *r.dist_to_fixset < *best)) best = r.dist_to_fixset;
  }
  return best;
}

Trace run(const IterationConfig& cfg) {
  cfg.validate();
  const auto reference = cfg.resolved_reference();
  Trace trace;
  ProductPoint x = cfg.x0;
  for (int n = 1;; ++n) {
    TraceRecord rec;
    rec.n = n;
    try {
      StepResult s;
      if (cfg.error_terms) {
        const auto e = cfg.error_terms(n);
        s = step_with_errors(x, n, cfg, e.u, e.v);
      } else {
        s = step(x, n, cfg);
      }
      for (const auto& t : cfg.t_family) rec.t_defects.push_back(distance(x, nth_power(t, n, x)));
      for (const auto& i : cfg.i_family) rec.i_defects.push_back(distance(x, nth_power(i, n, x)));
      rec.step_norm = distance(s.next, x);
      if (cfg.fixed_set) rec.dist_to_fixset = distance_to_fixset(x, *cfg.fixed_set);
      if (reference) rec.dist_to_ref = distance(x, *reference);
      rec.x = std::move(x);
      rec.y = std::move(s.y);
      x = std::move(s.next);
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(n) + ": " + e.detail());
    }
    const bool converged = rec.step_norm < cfg.tol;
    trace.records.push_back(std::move(rec));
    if (converged) {
      trace.terminated_by = Termination::Tolerance;
      break;
    }
    if (n >= cfg.max_steps) {
      trace.terminated_by = Termination::MaxSteps;
      break;
    }
  }
  trace.final_x = std::move(x);
  return trace;
}

double distance_to_fixset(const ProductPoint& x, const FixedSetDescriptor& f) {
  if (f.kind == FixedSetDescriptor::Kind::SinglePoint) return distance(x, f.point);
  return l1_norm(x.vec) + f.interval.distance_to(x.scalar);
}

}  // namespace tanfp
