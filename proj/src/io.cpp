#include "hahnkit/io.hpp"

#include <fstream>
#include <sstream>

namespace hahnkit::io {

namespace {

void check_schema(const Json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema)
    throw InputError(std::string(what) + ": unsupported schema version (expected 1)");
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InputError(std::string(what) + ": missing field '" + key + "'");
  return j[key];
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  return j.get<double>();
}

Index integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<Index>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

dsl::Expr rule(const Json& j, const char* what) {
  const std::string src = text(j, what);
  try {
    return dsl::parse(src);
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + " '" + src + "': " + e.message(), e.offset());
  }
}

std::string label_of(const Json& j) { return j.contains("label") ? text(j["label"], "label") : std::string(); }

Json optional_index(const std::optional<Index>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Sequence& x) {
  Json j;
  j["schema"] = kSchema;
  if (!x.label().empty()) j["label"] = x.label();
  j["prefix"] = Json::array();
  for (double v : x.prefix()) j["prefix"].push_back(v);
  Json tail;
  switch (x.tail().kind()) {
    case TailModel::Kind::Zero: tail["kind"] = "zero"; break;
    case TailModel::Kind::ClosedForm:
      tail["kind"] = "closed_form";
      tail["rule"] = dsl::print(x.tail().rule());
      break;
    case TailModel::Kind::Unknown: tail["kind"] = "unknown"; break;
  }
  j["tail"] = tail;
  return j;
}

Sequence sequence_from_json(const Json& j) {
  check_schema(j, "sequence");
  if (j.contains("named")) {
    std::vector<double> params;
    if (j.contains("params")) {
      if (!j["params"].is_array()) throw InputError("sequence: 'params' must be an array");
      for (const auto& p : j["params"]) params.push_back(number(p, "sequence param"));
    }
    Sequence s = named_sequence(text(j["named"], "sequence 'named'"), params);
    return j.contains("label") ? s.with_label(label_of(j)) : s;
  }
  const Json& pj = field(j, "prefix", "sequence");
  if (!pj.is_array()) throw InputError("sequence: 'prefix' must be an array");
  std::vector<double> prefix;
  prefix.reserve(pj.size());
  for (const auto& v : pj) prefix.push_back(number(v, "sequence prefix entry"));
  TailModel tail = TailModel::zero();
  if (j.contains("tail")) {
    const Json& tj = j["tail"];
    if (!tj.is_object()) throw InputError("sequence: 'tail' must be an object");
    const std::string kind = text(field(tj, "kind", "sequence tail"), "tail kind");
    if (kind == "zero")
      tail = TailModel::zero();
    else if (kind == "unknown")
      tail = TailModel::unknown();
    else if (kind == "closed_form")
      tail = TailModel::closed_form(rule(field(tj, "rule", "closed_form tail"), "tail rule"));
    else
      throw InputError("sequence: unknown tail kind '" + kind + "' (zero, closed_form, unknown)");
  }
  return Sequence(std::move(prefix), std::move(tail), label_of(j));
}

Json to_json(const InfMatrix& a) {
  Json j;
  j["schema"] = kSchema;
  if (!a.label().empty()) j["label"] = a.label();
  switch (a.kind()) {
    case MatrixKind::Named:
      j["kind"] = "named";
      j["id"] = to_string(a.named_id());
      break;
    case MatrixKind::Banded:
      j["kind"] = "banded";
      j["offsets"] = a.band_offsets();
      j["rules"] = Json::array();
      for (const auto& r : a.band_rules()) j["rules"].push_back(dsl::print(r));
      break;
    case MatrixKind::DenseBlock: {
      j["kind"] = "dense_block";
      j["rows"] = a.block_rows();
      j["cols"] = a.block_cols();
      Json rows = Json::array();
      const auto e = a.block_entries();
      for (Index n = 0; n < a.block_rows(); ++n) {
        Json r = Json::array();
        for (Index k = 0; k < a.block_cols(); ++k) r.push_back(e[static_cast<std::size_t>(n * a.block_cols() + k)]);
        rows.push_back(r);
      }
      j["entries"] = rows;
      break;
    }
    case MatrixKind::DMatrix:
    case MatrixKind::BMatrix:
      j["kind"] = a.kind() == MatrixKind::DMatrix ? "d_matrix" : "b_matrix";
      j["a"] = to_json(a.generator());
      j["a"].erase("schema");
      break;
    case MatrixKind::Bar:
    case MatrixKind::Tilde: throw InputError("derived matrices have no JSON form");
  }
  return j;
}

InfMatrix matrix_from_json(const Json& j) {
  check_schema(j, "matrix");
  const std::string kind = text(field(j, "kind", "matrix"), "matrix kind");
  const std::string label = label_of(j);
  if (kind == "named") return InfMatrix::named(parse_named_matrix(text(field(j, "id", "named matrix"), "id")), label);
  if (kind == "banded") {
    const Json& oj = field(j, "offsets", "banded matrix");
    const Json& rj = field(j, "rules", "banded matrix");
    if (!oj.is_array() || !rj.is_array()) throw InputError("banded matrix: offsets and rules must be arrays");
    std::vector<Index> offsets;
    std::vector<dsl::Expr> rules;
    for (const auto& o : oj) offsets.push_back(integer(o, "band offset"));
    for (const auto& r : rj) rules.push_back(rule(r, "band rule"));
    return InfMatrix::banded(std::move(offsets), std::move(rules), label);
  }
  if (kind == "dense_block") {
    const Index rows = integer(field(j, "rows", "dense block"), "rows");
    const Index cols = integer(field(j, "cols", "dense block"), "cols");
    const Json& ej = field(j, "entries", "dense block");
    if (!ej.is_array() || static_cast<Index>(ej.size()) != rows)
      throw InputError("dense block: 'entries' must hold 'rows' arrays");
    std::vector<double> entries;
    for (const auto& r : ej) {
      if (!r.is_array() || static_cast<Index>(r.size()) != cols)
        throw InputError("dense block: every row must hold 'cols' numbers");
      for (const auto& v : r) entries.push_back(number(v, "dense block entry"));
    }
    return InfMatrix::dense_block(rows, cols, std::move(entries), label);
  }
  if (kind == "d_matrix") return InfMatrix::d_matrix(sequence_from_json(field(j, "a", "d_matrix")), label);
  if (kind == "b_matrix") return InfMatrix::b_matrix(sequence_from_json(field(j, "a", "b_matrix")), label);
  throw InputError("unknown matrix kind '" + kind + "' (named, banded, dense_block, d_matrix, b_matrix)");
}

Json to_json(const EstimatorConfig& cfg) {
  Json j;
  j["base_horizon"] = cfg.base_horizon;
  j["doublings"] = cfg.doublings;
  j["stall_rel_tol"] = cfg.stall_rel_tol;
  j["slope_hold"] = cfg.slope_hold;
  j["slope_fail"] = cfg.slope_fail;
  j["zero_tol"] = cfg.zero_tol;
  j["column_budget"] = cfg.column_budget;
  return j;
}

EstimatorConfig config_from_json(const Json& j, EstimatorConfig base) {
  check_schema(j, "config");
  for (const auto& [key, value] : j.items()) {
    if (key == "schema") continue;
    if (key == "base_horizon")
      base.base_horizon = integer(value, "base_horizon");
    else if (key == "doublings")
      base.doublings = static_cast<int>(integer(value, "doublings"));
    else if (key == "stall_rel_tol")
      base.stall_rel_tol = number(value, "stall_rel_tol");
    else if (key == "slope_hold")
      base.slope_hold = number(value, "slope_hold");
    else if (key == "slope_fail")
      base.slope_fail = number(value, "slope_fail");
    else if (key == "zero_tol")
      base.zero_tol = number(value, "zero_tol");
    else if (key == "column_budget")
      base.column_budget = integer(value, "column_budget");
    else
      throw InputError("config: unknown key '" + key + "'");
  }
  if (!(base.stall_rel_tol > 0) || !(base.zero_tol > 0)) throw InputError("config: tolerances must be positive");
  if (!(base.slope_hold < base.slope_fail)) throw InputError("config: slope_hold must be below slope_fail");
  if (base.column_budget < 4) throw InputError("config: column_budget must be at least 4");
  (void)base.horizon();
  return base;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["value"] = v.value;
  j["margin_or_trend"] = v.margin_or_trend;
  j["witness"] = optional_index(v.witness);
  j["note"] = v.note;
  return j;
}

Json to_json(const GrowthProfile& p) {
  Json j;
  j["horizons"] = p.horizons;
  j["values"] = p.values;
  j["slope"] = p.slope;
  return j;
}

Json to_json(const NormReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["space"] = to_string(r.space);
  j["value"] = r.value;
  j["horizon_used"] = r.horizon_used;
  j["exact"] = r.exact;
  return j;
}

Json horizons_json(const Horizon& h) { return Json(h.points()); }

Json to_json(const ConditionReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["class"] = to_string(r.cls);
  j["p"] = r.cls.pq.p;
  j["q"] = r.cls.pq.q;
  j["conditions"] = Json::array();
  for (const auto& c : r.conditions) {
    Json cj;
    cj["id"] = condition_id(c.tag);
    cj["eq"] = condition_formula(c.tag);
    cj["status"] = to_string(c.verdict.status);
    cj["value"] = c.verdict.value;
    cj["witness"] = optional_index(c.verdict.witness);
    cj["note"] = c.verdict.note;
    j["conditions"].push_back(cj);
  }
  j["overall"] = to_json(r.overall);
  j["notes"] = r.notes;
  j["horizons"] = horizons_json(r.horizon);
  j["config"] = to_json(r.config);
  return j;
}

Json parse_json(const std::string& content, const std::string& source) {
  try {
    return Json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(source + ": invalid JSON", at);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

namespace {

template <class F>
auto with_source(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.offset());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

Sequence load_sequence(const std::string& path) {
  const Json j = read_json_file(path);
  return with_source(path, [&] { return sequence_from_json(j); });
}

InfMatrix load_matrix(const std::string& path) {
  const Json j = read_json_file(path);
  return with_source(path, [&] { return matrix_from_json(j); });
}

EstimatorConfig load_config(const std::string& path, EstimatorConfig base) {
  const Json j = read_json_file(path);
  return with_source(path, [&] { return config_from_json(j, base); });
}

}  // namespace hahnkit::io
