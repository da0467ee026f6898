#include <algorithm>

#include "doctest.h"

#include "hahnkit/seqcore.hpp"
#include "support.hpp"

using namespace hahnkit;

TEST_SUITE("seqcore") {
  TEST_CASE("evaluation") {
    CHECK(zero_sequence().eval(7) == 0.0);
    CHECK(unit_sequence(3).eval(3) == 1.0);
    CHECK(unit_sequence(3).eval(4) == 0.0);
    CHECK(reciprocal_sequence().eval(4) == 0.25);
    CHECK(constant_sequence(2.5).eval(1000) == 2.5);
    const Sequence x({1.0, 2.0}, TailModel::closed_form(dsl::parse("k")));
    CHECK(x.eval(1) == 1.0);
    CHECK(x.eval(2) == 2.0);
    CHECK(x.eval(10) == 10.0);
    CHECK_THROWS_AS(x.eval(0), IndexError);
    CHECK_THROWS_AS(x.eval(-3), IndexError);
  }

  TEST_CASE("unknown tails evaluate only on the prefix") {
    const Sequence x({1.0, 2.0, 3.0}, TailModel::unknown());
    CHECK(x.eval(3) == 3.0);
    CHECK_THROWS_AS(x.eval(4), EvalError);
    CHECK(x.tail_unknown());
    CHECK(x.evaluable_end() == 3);
  }

  TEST_CASE("prefix contents are validated") {
    CHECK_THROWS_AS(Sequence({1.0, NAN}), InputError);
    CHECK_THROWS_AS(Sequence({INFINITY}), InputError);
    CHECK_THROWS_AS(TailModel::closed_form(dsl::parse("n*k")), InputError);
  }

  TEST_CASE("named sequences") {
    CHECK(named_sequence("unit", std::vector<double>{1.0}).eval(1) == 1.0);
    CHECK(named_sequence("unit", std::vector<double>{1.0}).eval(2) == 0.0);
    const Sequence alt = named_sequence("alternating");
    CHECK(alt.values(4) == std::vector<double>{-1.0, 1.0, -1.0, 1.0});
    CHECK(named_sequence("harmonic_shifted_partial").eval(2) == doctest::Approx(oracle::kB2).epsilon(1e-15));
    CHECK(named_sequence("constant", std::vector<double>{3.0}).eval(9) == 3.0);
    CHECK(named_sequence("zero").eval(9) == 0.0);
    CHECK(named_sequence("reciprocal").eval(8) == 0.125);
    CHECK_THROWS_AS(named_sequence("fibonacci"), InputError);
    CHECK_THROWS_AS(named_sequence("unit"), InputError);
    // Tails are exact.
    CHECK(named_sequence("harmonic_shifted_partial").tail().kind() == TailModel::Kind::ClosedForm);
    CHECK(named_sequence("unit", std::vector<double>{4.0}).eventually_zero());
  }

  TEST_CASE("harmonic_shifted_partial matches the direct partial sum") {
    const Sequence b = harmonic_shifted_partial_sequence();
    double s = 0.0;
    for (Index k = 1; k <= 5000; ++k) {
      s += 1.0 / static_cast<double>(k + 1);
      CHECK(b.eval(k) == doctest::Approx(s).epsilon(1e-13));
    }
  }

  TEST_CASE("sections") {
    CHECK(truncate(zero_sequence(), 5).eval(3) == 0.0);
    const Sequence t = truncate(reciprocal_sequence(), 2);
    CHECK(t.prefix_size() == 2);
    CHECK(t.eval(1) == 1.0);
    CHECK(t.eval(2) == 0.5);
    CHECK(t.eval(3) == 0.0);
    CHECK(t.eventually_zero());
    CHECK(t.support_end() == Index{2});
    CHECK_THROWS_AS(truncate(t, 0), IndexError);
  }

  TEST_CASE("truncate composes by minimum") {
    testgen::Gen g(11);
    for (int i = 0; i < 200; ++i) {
      const Sequence x = g.integer(0, 1) ? g.finite(64, 5.0) : reciprocal_sequence();
      const Index n = g.integer(1, 80);
      const Index m = g.integer(1, 80);
      const Sequence a = truncate(truncate(x, n), m);
      const Sequence b = truncate(x, std::min(n, m));
      for (Index k = 1; k <= 100; ++k) CHECK(a.eval(k) == b.eval(k));
    }
  }

  TEST_CASE("alternating is bounded by one") {
    const Sequence alt = alternating_sequence();
    for (Index k = 1; k <= 4096; ++k) CHECK(std::fabs(alt.eval(k)) <= 1.0);
  }

  TEST_CASE("linear combinations keep closed-form tails") {
    const Sequence x = linear_combination(2.0, reciprocal_sequence(), -1.0, unit_sequence(2));
    CHECK(x.eval(1) == 2.0);
    CHECK(x.eval(2) == 0.0);
    CHECK(x.eval(1000) == doctest::Approx(0.002).epsilon(1e-15));
    CHECK(x.tail().kind() == TailModel::Kind::ClosedForm);
    const Sequence z = linear_combination(1.0, unit_sequence(3), 1.0, unit_sequence(5));
    CHECK(z.eventually_zero());
    CHECK(z.support_end() == Index{5});
  }

  TEST_CASE("exponent pairs") {
    const auto pq = ExponentPair::from_p(3.0);
    CHECK(pq.q == doctest::Approx(1.5));
    CHECK_NOTHROW(ExponentPair::checked(2.0, 2.0));
    CHECK_THROWS_AS(ExponentPair::checked(2.0, 3.0), InputError);
    CHECK_THROWS_AS(ExponentPair::from_p(1.0), InputError);
    CHECK_THROWS_AS(ExponentPair::from_p(0.5), InputError);
  }

  TEST_CASE("horizons") {
    const Horizon h;
    CHECK(h.max() == 1024);
    CHECK(h.points() == std::vector<Index>{256, 512, 1024});
    CHECK(Horizon(4, 3).points() == std::vector<Index>{4, 8, 16, 32});
    CHECK_THROWS_AS(Horizon(0, 2), InputError);
  }
}
