#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cli.hpp"
#include "hahnkit/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hahnkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(HAHNKIT_DATA_DIR) + "/" + name; }

hahnkit::io::Json json(const Result& r) { return hahnkit::io::Json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("norm of e^2 in hp(2)") {
    const Result r = run({"norm", "--space", "hp:2", "--seq", data("e2.json")});
    CHECK(r.code == 0);
    CHECK(json(r)["value"].get<double>() == doctest::Approx(2.2360679774997896).epsilon(1e-15));
  }

  TEST_CASE("alternating is not in hp(2)") {
    const Result r = run({"member", "--space", "hp:2", "--seq", data("alternating.json")});
    CHECK(r.code == 1);
    CHECK(json(r)["verdict"]["status"] == "fails");
    CHECK(json(r)["verdict"]["witness"].is_number_integer());
  }

  TEST_CASE("eval of the zero sequence") {
    const Result r = run({"eval", "--seq", data("zero.json"), "--k", "5"});
    CHECK(r.code == 0);
    CHECK(json(r)["values"][0]["value"] == 0.0);
    const Result csv = run({"eval", "--seq", data("reciprocal.json"), "--k", "2", "--count", "2", "--format", "csv"});
    CHECK(csv.out == "k,value\n2,0.5\n3,0.3333333333333333\n");
  }

  TEST_CASE("divergent norm exits 1 with the verdict") {
    const Result r = run({"norm", "--space", "hp:2", "--seq", data("alternating.json")});
    CHECK(r.code == 1);
    CHECK(json(r)["verdict"]["status"] == "fails");
  }

  TEST_CASE("inconclusive exits 2") {
    const Result r = run({"dual", "--set", "d1", "--p", "2", "--seq", data("e1.json")});
    CHECK(r.code == 2);
  }

  TEST_CASE("expand emits the documented csv columns") {
    const Result r = run({"expand", "--seq", data("reciprocal.json"), "--m", "3", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "k,lambda,reconstruction,x,error");
    int rows = 0;
    for (std::string l; std::getline(lines, l);) ++rows;
    CHECK(rows == 3);
  }

  TEST_CASE("classify fills in the exponent") {
    const Result r = run({"classify", "--from", "lp", "--to", "linf", "--matrix", data("identity.json"), "--p", "3"});
    CHECK(r.code == 0);
    CHECK(json(r)["class"] == "lp:3 -> linf");
    CHECK(json(r)["conditions"][0]["value"] == 1.0);
    const Result ones = run({"classify", "--from", "lp:2", "--to", "linf", "--matrix", data("ones.json")});
    CHECK(ones.code == 1);
    const Result bad = run({"classify", "--from", "c", "--to", "c", "--matrix", data("ones.json")});
    CHECK(bad.code == 3);
  }

  TEST_CASE("input errors exit 3") {
    CHECK(run({}).code == 3);
    CHECK(run({"norm", "--space", "hp:2"}).code == 3);
    CHECK(run({"norm", "--space", "hp:2", "--seq", data("e2.json"), "--bogus"}).code == 3);
    CHECK(run({"norm", "--space", "zz", "--seq", data("e2.json")}).code == 3);
    CHECK(run({"norm", "--space", "hp:2", "--seq", "/nonexistent.json"}).code == 3);
    CHECK(run({"norm", "--space", "hp:2", "--seq", data("e2.json"), "--format", "xml"}).code == 3);
    CHECK(run({"verify", "--suite", "nothing"}).code == 3);
    const Result p = run({"eval", "--seq", data("bad_rule.json"), "--k", "1"});
    CHECK(p.code == 3);
    CHECK(p.err.find("bad_rule.json") != std::string::npos);
    CHECK(p.err.find("offset") != std::string::npos);
  }

  TEST_CASE("config file and environment fallback") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string cfg = (dir / "hahnkit_cfg_test.json").string();
    std::ofstream(cfg) << R"({"schema": 1, "base_horizon": 32, "doublings": 1})";
    Result r = run({"member", "--space", "c0", "--seq", data("reciprocal.json"), "--config", cfg});
    CHECK(json(r)["horizons"] == hahnkit::io::Json({32, 64}));
    ::setenv("HAHNKIT_CONFIG", cfg.c_str(), 1);
    r = run({"member", "--space", "c0", "--seq", data("reciprocal.json")});
    CHECK(json(r)["horizons"] == hahnkit::io::Json({32, 64}));
    r = run({"member", "--space", "c0", "--seq", data("reciprocal.json"), "--horizon", "16"});
    CHECK(json(r)["horizons"] == hahnkit::io::Json({16, 32}));
    ::unsetenv("HAHNKIT_CONFIG");
    std::filesystem::remove(cfg);
  }

  TEST_CASE("output file") {
    const std::string path = (std::filesystem::temp_directory_path() / "hahnkit_out_test.json").string();
    const Result r = run({"norm", "--space", "h", "--seq", data("e2.json"), "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(hahnkit::io::Json::parse(in)["value"] == 4.0);
    std::filesystem::remove(path);
  }

  TEST_CASE("verify output is reproducible") {
    const Result a = run({"verify", "--suite", "basis", "--seed", "7", "--no-timestamp"});
    const Result b = run({"verify", "--suite", "basis", "--seed", "7", "--no-timestamp"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(json(a).contains("wall_seconds"));
  }

  TEST_CASE("findings fail only in strict mode") {
    CHECK(run({"verify", "--suite", "spaces", "--no-timestamp"}).code == 0);
    CHECK(run({"verify", "--suite", "spaces", "--strict-paper", "--no-timestamp"}).code == 1);
  }
}
