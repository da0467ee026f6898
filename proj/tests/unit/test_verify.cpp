#include <string>

#include "doctest.h"

#include "hahnkit/verify.hpp"

using namespace hahnkit;

namespace {
const PropertyResult& find(const VerifyReport& r, const std::string& name) {
  for (const auto& p : r.results)
    if (p.name == name) return p;
  FAIL("missing property " << name);
  return r.results.front();
}
}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("operators suite passes apart from the bar relation") {
    const VerifyReport r = run_suite("operators");
    CHECK(r.count(Outcome::Fail) == 0);
    for (const char* p : {"m_round_trip", "m_transform_linearity", "tilde_identity", "bar_relation_reordered_kernel"})
      CHECK(find(r, p).outcome == Outcome::Pass);
    CHECK(find(r, "bar_relation").outcome == Outcome::Finding);
    CHECK(find(r, "bar_relation").data["violations"].get<int>() > 0);
  }

  TEST_CASE("spaces suite records the b sequence") {
    const VerifyReport r = run_suite("spaces");
    CHECK(r.count(Outcome::Fail) == 0);
    const PropertyResult& b = find(r, "b_sequence_in_hp_not_linf");
    CHECK(b.outcome == Outcome::Finding);
    CHECK(b.data["hp2"]["status"] == "fails");
    CHECK(b.data["limit_zero"]["status"] == "fails");
    CHECK(b.data["diff_term_at_horizon"].get<double>() == doctest::Approx(1024.0 / 1026.0).epsilon(1e-12));
    CHECK(find(r, "alternating_in_linf_not_hp").outcome == Outcome::Pass);
    CHECK(r.exit_code() == 0);
    VerifyOptions strict;
    strict.strict_paper = true;
    CHECK(run_suite("spaces", strict).exit_code() == 1);
  }

  TEST_CASE("suites are deterministic") {
    const auto a = to_json(run_suite("duals"), false);
    const auto b = to_json(run_suite("duals"), false);
    CHECK(a == b);
    VerifyOptions other;
    other.seed = 43;
    CHECK(to_json(run_suite("duals", other), false)["seed"] == 43);
  }

  TEST_CASE("unknown suites are rejected") { CHECK_THROWS_AS(run_suite("everything"), InputError); }
}
