#include "tanfp/serialization.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include "tanfp/errors.hpp"

namespace tanfp {

using nlohmann::json;

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

json to_json(const ProductPoint& p) {
  json vec = json::array();
  for (double c : p.vec.coeffs()) vec.push_back(c);
  return {{"scalar", p.scalar}, {"vec", vec}};
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::ParseError, field + ": " + msg);
}

double number_at(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) parse_fail(field + "." + key, "missing");
  if (!j.at(key).is_number()) parse_fail(field + "." + key, "expected a number");
  return j.at(key).get<double>();
}

}  // namespace

ProductPoint point_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) parse_fail(field, "expected an object {\"scalar\": s, \"vec\": [...]}");
  ProductPoint p;
  p.scalar = j.contains("scalar") ? number_at(j, "scalar", field) : 0.0;
  if (j.contains("vec")) {
    const auto& v = j.at("vec");
    if (!v.is_array()) parse_fail(field + ".vec", "expected an array of numbers");
    std::vector<double> coeffs;
    for (const auto& c : v) {
      if (!c.is_number()) parse_fail(field + ".vec", "expected an array of numbers");
      coeffs.push_back(c.get<double>());
    }
    p.vec = L1Vector(std::move(coeffs));
  }
  return p;
}

json to_json(const MappingSpec& spec) {
  json j{{"kind", to_string(spec.kind)}};
  if (spec.kind != MappingKind::Identity) j["alpha"] = spec.alpha;
  if (spec.kind == MappingKind::SF) j["kappa"] = spec.kappa;
  return j;
}

MappingSpec mapping_spec_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    parse_fail(field, "expected an object with a string \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  MappingSpec spec;
  if (kind == "identity") {
    spec.kind = MappingKind::Identity;
  } else if (kind == "t_alpha") {
    spec.kind = MappingKind::TAlpha;
  } else if (kind == "s") {
    spec.kind = MappingKind::S;
  } else if (kind == "s_f") {
    spec.kind = MappingKind::SF;
  } else {
    throw Error(ErrorKind::ValidationError,
                field + ".kind: unknown mapping \"" + kind + "\" (expected t_alpha, s, s_f or identity)");
  }
  if (spec.kind != MappingKind::Identity) spec.alpha = number_at(j, "alpha", field);
  if (spec.kind == MappingKind::SF) spec.kappa = number_at(j, "kappa", field);
  return spec;
}

json to_json(const FixedSetDescriptor& f) {
  if (f.kind == FixedSetDescriptor::Kind::SinglePoint) return {{"kind", "single_point"}, {"point", to_json(f.point)}};
  return {{"kind", "scalar_line"}, {"interval", {f.interval.lo, f.interval.hi}}};
}

FixedSetDescriptor fixed_set_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    parse_fail(field, "expected an object with a string \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "single_point") {
    if (!j.contains("point")) parse_fail(field + ".point", "missing");
    return FixedSetDescriptor::single_point(point_from_json(j.at("point"), field + ".point"));
  }
  if (kind == "scalar_line") {
    const auto& iv = j.value("interval", json());
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      parse_fail(field + ".interval", "expected [lo, hi]");
    return FixedSetDescriptor::scalar_line({iv[0].get<double>(), iv[1].get<double>()});
  }
  throw Error(ErrorKind::ValidationError, field + ".kind: unknown fixed set \"" + kind + "\"");
}

json to_json(const InequalityCheck& c) {
  json inputs = json::object();
  for (const auto& [k, v] : c.inputs) inputs[k] = v;
  return {{"equation", c.equation}, {"inputs", inputs}, {"lhs", c.lhs},
          {"rhs", c.rhs},           {"slack", c.slack},  {"satisfied", c.satisfied}};
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const std::size_t m = trace.records.empty() ? 0 : trace.records.front().t_defects.size();
  os << "n,step_norm,dist_to_fixset,dist_to_ref";
  for (std::size_t i = 1; i <= m; ++i) os << ",t_defect_" << i;
  for (std::size_t i = 1; i <= m; ++i) os << ",i_defect_" << i;
  os << '\n';
  for (const auto& r : trace.records) {
    os << r.n << ',' << format_double(r.step_norm) << ',';
    if (r.dist_to_fixset) os << format_double(*r.dist_to_fixset);
    os << ',';
    if (r.dist_to_ref) os << format_double(*r.dist_to_ref);
    for (double d : r.t_defects) os << ',' << format_double(d);
    for (double d : r.i_defects) os << ',' << format_double(d);
    os << '\n';
  }
}

void write_trace_states_jsonl(std::ostream& os, const Trace& trace) {
  for (const auto& r : trace.records) {
    os << json{{"n", r.n}, {"x", to_json(r.x)}, {"y", to_json(r.y)}}.dump() << '\n';
  }
}

}  // namespace tanfp
