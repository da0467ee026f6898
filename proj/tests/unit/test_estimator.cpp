#include <cmath>

#include "doctest.h"

#include "hahnkit/estimator.hpp"
#include "support.hpp"

using namespace hahnkit;

namespace {
std::vector<double> family(Index n, double (*f)(Index)) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) v[static_cast<std::size_t>(k - 1)] = f(k);
  return v;
}
}  // namespace

TEST_SUITE("estimator") {
  TEST_CASE("series of 1/k^2 at a large horizon") {
    const Horizon h(Index{1} << 18, 2);
    const auto t = family(h.max(), [](Index k) { return 1.0 / (static_cast<double>(k) * static_cast<double>(k)); });
    const Verdict v = series_verdict(t, h);
    CHECK(v.holds());
    // Sequential double summation of 2^20 terms: rounding bound n * 2^-53 ~ 1.2e-10 relative,
    // still far tighter than the 9.5e-7 gap to pi^2/6.
    CHECK(v.value == doctest::Approx(oracle::kBasel2_20).epsilon(1.2e-10));
    CHECK(std::fabs(v.value - 3.14159265358979323846 * 3.14159265358979323846 / 6.0) > 9e-7);
  }

  TEST_CASE("harmonic series fails") {
    const Horizon h;
    const Verdict v = series_verdict(family(h.max(), [](Index k) { return 1.0 / static_cast<double>(k); }), h);
    CHECK(v.fails());
    CHECK(v.margin_or_trend > 0.1);
    CHECK(v.witness.has_value());
  }

  TEST_CASE("zero series holds") {
    const Horizon h;
    const Verdict v = series_verdict(std::vector<double>(static_cast<std::size_t>(h.max()), 0.0), h);
    CHECK(v.holds());
    CHECK(v.value == 0.0);
  }

  TEST_CASE("slowly converging series is inconclusive") {
    const Horizon h;
    const auto t = family(h.max(), [](Index k) { return std::pow(static_cast<double>(k), -1.2); });
    CHECK(series_verdict(t, h).status == Status::Inconclusive);
  }

  TEST_CASE("incomplete input never decides") {
    const Horizon h;
    const auto t = family(h.max(), [](Index) { return 0.0; });
    CHECK(series_verdict(t, h, {}, false).status == Status::Inconclusive);
    const Sequence s({1.0, 2.0}, TailModel::unknown());
    CHECK(series_verdict(s, h).status == Status::Inconclusive);
  }

  TEST_CASE("sup families") {
    const Horizon h;
    Verdict v = sup_verdict(family(h.max(), [](Index n) { return 1.0 / static_cast<double>(n); }), h);
    CHECK(v.holds());
    CHECK(v.value == 1.0);
    CHECK(v.witness == Index{1});
    v = sup_verdict(family(h.max(), [](Index n) { return static_cast<double>(n); }), h);
    CHECK(v.fails());
    CHECK(v.witness.has_value());
    v = sup_verdict(std::vector<double>(static_cast<std::size_t>(h.max()), 0.0), h);
    CHECK(v.holds());
    CHECK(v.value == 0.0);
    v = sup_verdict([](Index n) { return std::sin(static_cast<double>(n)); }, h);
    CHECK(v.holds());
  }

  TEST_CASE("non-finite values are evaluation errors") {
    const Horizon h(4, 1);
    std::vector<double> t(8, 1.0);
    t[5] = NAN;
    CHECK_THROWS_AS(sup_verdict(t, h), EvalError);
    CHECK_THROWS_AS(series_verdict(t, h), EvalError);
  }

  TEST_CASE("limit gates") {
    const Horizon h;
    const auto recip = family(h.max(), [](Index k) { return 1.0 / static_cast<double>(k); });
    // 1/k is below 1e-6 only far beyond the horizon: strict cannot decide, trend accepts.
    CHECK(limit_verdict(recip, h, LimitMode::Zero, LimitGate::Strict).status == Status::Inconclusive);
    CHECK(limit_verdict(recip, h, LimitMode::Zero, LimitGate::Trend).holds());
    const auto fast = family(h.max(), [](Index k) { return std::pow(static_cast<double>(k), -3.0); });
    CHECK(limit_verdict(fast, h, LimitMode::Zero, LimitGate::Strict).holds());
    const auto ones = family(h.max(), [](Index) { return 1.0; });
    const Verdict e = limit_verdict(ones, h, LimitMode::Exists, LimitGate::Strict);
    CHECK(e.holds());
    CHECK(e.value == 1.0);
    CHECK(limit_verdict(ones, h, LimitMode::Zero, LimitGate::Strict).fails());
    const auto alt = family(h.max(), [](Index k) { return k % 2 ? -1.0 : 1.0; });
    CHECK(limit_verdict(alt, h, LimitMode::Exists, LimitGate::Trend).fails());
  }

  TEST_CASE("slopes") {
    const std::vector<Index> hs{256, 512, 1024};
    CHECK(fitted_slope(hs, std::vector<double>{1.0, 2.0, 4.0}) == doctest::Approx(1.0));
    CHECK(fitted_slope(hs, std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
    CHECK(step_slope(1.0, 2.0, 256, 512) == doctest::Approx(1.0));
  }

  TEST_CASE("usable points clip to what is available") {
    const Horizon h;
    CHECK(usable_points(h, 2000) == std::vector<Index>{256, 512, 1024});
    CHECK(usable_points(h, 600) == std::vector<Index>{256, 512});
    CHECK(usable_points(h, 300).empty());
  }

  TEST_CASE("conjunction lattice") {
    Verdict holds;
    holds.status = Status::Holds;
    Verdict fails;
    fails.status = Status::Fails;
    fails.witness = 4;
    Verdict inc;
    CHECK(conjoin({holds, holds}).holds());
    CHECK(conjoin({holds, inc}).status == Status::Inconclusive);
    const Verdict f = conjoin({holds, inc, fails});
    CHECK(f.fails());
    CHECK(f.witness == Index{4});
    CHECK(force_inconclusive(holds, "unknown tail").status == Status::Inconclusive);
  }

  TEST_CASE("verdicts are deterministic") {
    testgen::Gen g(3);
    const Horizon h;
    for (int i = 0; i < 20; ++i) {
      const auto t = g.values(h.max(), 1.0);
      const Verdict a = series_verdict(t, h);
      const Verdict b = series_verdict(t, h);
      CHECK(a.status == b.status);
      CHECK(a.value == b.value);
      CHECK(a.margin_or_trend == b.margin_or_trend);
    }
  }
}
