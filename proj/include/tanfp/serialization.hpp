#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tanfp/mapping_zoo.hpp"
#include "tanfp/scheme.hpp"
#include "tanfp/sequence_space.hpp"
#include "tanfp/verifier.hpp"

namespace tanfp {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// {"scalar": s, "vec": [v1, v2, ...]}
nlohmann::json to_json(const ProductPoint& p);
/// Throws ParseError naming `field` on malformed input.
ProductPoint point_from_json(const nlohmann::json& j, const std::string& field);

// {"kind": "t_alpha"|"s"|"s_f"|"identity", "alpha": a, "kappa": k}
nlohmann::json to_json(const MappingSpec& spec);
MappingSpec mapping_spec_from_json(const nlohmann::json& j, const std::string& field);

// {"kind": "scalar_line", "interval": [lo, hi]} | {"kind": "single_point", "point": {...}}
nlohmann::json to_json(const FixedSetDescriptor& f);
FixedSetDescriptor fixed_set_from_json(const nlohmann::json& j, const std::string& field);

// {equation, inputs, lhs, rhs, slack, satisfied}
nlohmann::json to_json(const InequalityCheck& c);

/// Columns: n, step_norm, dist_to_fixset, dist_to_ref, t_defect_1..m, i_defect_1..m.
/// Missing optional values are written as empty fields.
void write_trace_csv(std::ostream& os, const Trace& trace);

/// One JSON object per record: {"n", "x", "y"}.
void write_trace_states_jsonl(std::ostream& os, const Trace& trace);

}  // namespace tanfp
