#include "doctest.h"

#include "hahnkit/io.hpp"
#include "support.hpp"

using namespace hahnkit;
using io::Json;

TEST_SUITE("io") {
  TEST_CASE("sequence documents round-trip") {
    const Sequence x({1.0, 0.5}, TailModel::closed_form(dsl::parse("1/k")), "r");
    const Sequence y = io::sequence_from_json(Json::parse(io::to_json(x).dump()));
    CHECK(y.label() == "r");
    for (Index k = 1; k < 20; ++k) CHECK(y.eval(k) == x.eval(k));
    CHECK(io::to_json(y) == io::to_json(x));
    const Sequence z = io::sequence_from_json(Json::parse(R"({"schema": 1, "prefix": [1, 2], "tail": {"kind": "unknown"}})"));
    CHECK(z.tail_unknown());
    const Sequence n = io::sequence_from_json(Json::parse(R"({"named": "unit", "params": [3]})"));
    CHECK(n.eval(3) == 1.0);
  }

  TEST_CASE("malformed sequence documents") {
    CHECK_THROWS_AS(io::sequence_from_json(Json::parse(R"({"prefix": "x"})")), InputError);
    CHECK_THROWS_AS(io::sequence_from_json(Json::parse(R"({"schema": 2, "prefix": []})")), InputError);
    CHECK_THROWS_AS(io::sequence_from_json(Json::parse(R"({"prefix": [], "tail": {"kind": "weird"}})")), InputError);
    try {
      io::sequence_from_json(Json::parse(R"({"prefix": [], "tail": {"kind": "closed_form", "rule": "1/+"}})"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 2);
    }
  }

  TEST_CASE("matrix documents") {
    const InfMatrix d = io::matrix_from_json(Json::parse(R"({"kind": "dense_block", "rows": 2, "cols": 2, "entries": [[1, 2], [3, 4]]})"));
    CHECK(d.entry(2, 1) == 3.0);
    CHECK(io::to_json(io::matrix_from_json(io::to_json(d))) == io::to_json(d));
    const InfMatrix b = io::matrix_from_json(Json::parse(R"({"kind": "banded", "offsets": [0], "rules": ["n"]})"));
    CHECK(b.entry(4, 4) == 4.0);
    const InfMatrix m = io::matrix_from_json(Json::parse(R"({"kind": "named", "id": "M"})"));
    CHECK(m.entry(2, 3) == -2.0);
    const InfMatrix dm = io::matrix_from_json(Json::parse(R"({"kind": "d_matrix", "a": {"named": "reciprocal"}})"));
    CHECK(dm.entry(1, 2) == 0.5);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"kind": "dense_block", "rows": 2, "cols": 2, "entries": [[1, 2]]})")),
                    InputError);
    CHECK_THROWS_AS(io::to_json(tilde_transform(m)), InputError);
  }

  TEST_CASE("config documents") {
    const EstimatorConfig c = io::config_from_json(Json::parse(R"({"schema": 1, "base_horizon": 64, "doublings": 3})"));
    CHECK(c.base_horizon == 64);
    CHECK(c.doublings == 3);
    CHECK(c.horizon().max() == 512);
    CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"horizon": 64})")), InputError);
    CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"slope_hold": 0.5, "slope_fail": 0.1})")), InputError);
    CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"column_budget": 3})")), InputError);
    CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"base_horizon": 0})")), InputError);
  }

  TEST_CASE("invalid JSON names the source and offset") {
    try {
      io::parse_json("{\"prefix\": [1,,]}", "seq.json");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("seq.json") != std::string::npos);
      CHECK(e.offset() == 14);  // the second comma, 0-based
    }
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), InputError);
  }

  TEST_CASE("reports") {
    const Json r = io::to_json(classify(InfMatrix::named(NamedMatrix::Identity), make_class(ClassKind::Lp_Linf, 2.0)));
    CHECK(r["schema"] == 1);
    CHECK(r["class"] == "lp:2 -> linf");
    CHECK(r["conditions"][0]["id"] == "row_q_sup");
    CHECK(r["conditions"][0]["status"] == "holds");
    CHECK(r["overall"]["status"] == "holds");
    CHECK(r["horizons"] == Json({256, 512, 1024}));
    CHECK(r["config"]["column_budget"] == 64);
  }
}
