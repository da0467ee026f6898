#pragma once

// JSON encodings. Every document carries "schema": 1.
//
// sequence: {"label"?, "prefix": [..], "tail": {"kind": "zero"}
//            | {"kind": "closed_form", "rule": "<expr in k>"} | {"kind": "unknown"}}
//           or {"named": "<name>", "params"?: [..]}
// matrix:   {"label"?, "kind": "named", "id": "identity"|"zero"|"M"|"ones"}
//           {"kind": "banded", "offsets": [..], "rules": ["<expr in n, k>", ..]}
//           {"kind": "dense_block", "rows": R, "cols": C, "entries": [[..], ..]}
//           {"kind": "d_matrix" | "b_matrix", "a": <sequence>}
// config:   estimator keys (base_horizon, doublings, stall_rel_tol, slope_hold,
//           slope_fail, zero_tol, column_budget)

#include <string>

#include "json.hpp"

#include "hahnkit/estimator.hpp"
#include "hahnkit/matclass.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"

namespace hahnkit::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

Json to_json(const Sequence& x);
Sequence sequence_from_json(const Json& j);

/// Throws InputError for derived (bar/tilde) matrices.
Json to_json(const InfMatrix& a);
InfMatrix matrix_from_json(const Json& j);

Json to_json(const EstimatorConfig& cfg);
/// Keys absent from `j` keep their value from `base`; unknown keys are rejected.
EstimatorConfig config_from_json(const Json& j, EstimatorConfig base = {});

Json to_json(const Verdict& v);
Json to_json(const GrowthProfile& p);
Json to_json(const NormReport& r);
Json to_json(const ConditionReport& r);
Json horizons_json(const Horizon& h);

/// Parse errors are reported as ParseError naming the file and byte offset.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
Sequence load_sequence(const std::string& path);
InfMatrix load_matrix(const std::string& path);
EstimatorConfig load_config(const std::string& path, EstimatorConfig base = {});

}  // namespace hahnkit::io
