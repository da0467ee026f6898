#include <cmath>

#include "doctest.h"

#include "hahnkit/basis.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"
#include "support.hpp"

using namespace hahnkit;

TEST_SUITE("basis") {
  TEST_CASE("basis elements") {
    const Sequence b1 = basis_element(1);
    CHECK(b1.eval(1) == 1.0);
    CHECK(b1.eval(2) == 0.0);
    const Sequence b2 = basis_element(2);
    CHECK(b2.values(3) == std::vector<double>{0.5, 0.5, 0.0});
    const Sequence y = m_transform(basis_element(3));
    for (Index k = 1; k <= 5; ++k) CHECK(y.eval(k) == doctest::Approx(k == 3 ? 1.0 : 0.0).epsilon(1e-15));
    CHECK_THROWS_AS(basis_element(0), IndexError);
  }

  TEST_CASE("M b^(k) = e^k up to one rounding") {
    for (Index k = 1; k <= 512; ++k) {
      const Sequence y = m_transform(basis_element(k));
      for (Index j = 1; j <= k + 1; ++j) CHECK(std::fabs(y.eval(j) - (j == k ? 1.0 : 0.0)) <= 2.3e-16);
    }
  }

  TEST_CASE("expansions") {
    const Expansion e = expand(Sequence({1.0, 1.0}), 2);
    CHECK(e.coefficients.eval(1) == 0.0);
    CHECK(e.coefficients.eval(2) == 2.0);
    CHECK(e.reconstruction.values(3) == std::vector<double>{1.0, 1.0, 0.0});
    const Expansion z = expand(zero_sequence(), 5);
    CHECK(z.reconstruction.eval(1) == 0.0);
    const Expansion u = expand(unit_sequence(1), 1);
    CHECK(u.coefficients.eval(1) == 1.0);
    CHECK(u.reconstruction.eval(1) == 1.0);
    CHECK(u.reconstruction.eval(2) == 0.0);
    CHECK(u.order == 1);
  }

  TEST_CASE("reconstruction error") {
    const auto pq = ExponentPair::from_p(2.0);
    CHECK(reconstruction_error(Sequence({1.0, -2.0, 3.0}), 3, pq) == 0.0);
    CHECK(reconstruction_error(reciprocal_sequence(), 10, pq) ==
          doctest::Approx(oracle::kReconErrorReciprocalM10).epsilon(1e-12));
    CHECK(reconstruction_error(reciprocal_sequence(), 1, pq) >= reconstruction_error(reciprocal_sequence(), 2, pq));
    CHECK_THROWS_AS(reconstruction_error(alternating_sequence(), 4, pq), DivergenceError);
  }

  TEST_CASE("exact reconstruction of finite sequences") {
    testgen::Gen g(301);
    for (int i = 0; i < 300; ++i) {
      const Sequence x = g.finite(512, 10.0);
      const Index m = *x.support_end() + g.integer(0, 16);
      const Expansion e = expand(x, m);
      for (Index k = 1; k <= m + 1; ++k) CHECK(std::fabs(e.reconstruction.eval(k) - x.eval(k)) <= 1e-12);
    }
  }

  TEST_CASE("coefficients are recovered from the reconstruction") {
    testgen::Gen g(302);
    for (int i = 0; i < 100; ++i) {
      const Sequence x = g.finite(64, 1.0);
      const Index m = g.integer(1, 64);
      const Expansion e = expand(x, m);
      const Expansion again = expand(e.reconstruction, m);
      for (Index k = 1; k <= m; ++k) CHECK(std::fabs(again.coefficients.eval(k) - e.coefficients.eval(k)) <= 1e-12);
    }
  }

  TEST_CASE("error shrinks along a doubling ladder") {
    testgen::Gen g(303);
    const auto pq = ExponentPair::from_p(2.0);
    for (int i = 0; i < 30; ++i) {
      const Sequence x({}, TailModel::closed_form(dsl::Expr::number(g.uniform(0.1, 2.0)) *
                                                   dsl::Expr::power(dsl::Expr::var_k(), -g.uniform(2.5, 4.0))));
      REQUIRE(member(x, SpaceId::hp(2.0)).holds());
      double prev = INFINITY;
      for (Index m = 1; m <= 256; m *= 2) {
        const double e = reconstruction_error(x, m, pq);
        CHECK(e <= prev + 1e-12);
        prev = e;
      }
      CHECK(prev < 1e-3 * reconstruction_error(x, 1, pq));
    }
  }

  TEST_CASE("tails starting near the horizon are not read as divergence") {
    // Terms decay like k^-2.65, but from k = 129 the partial sums still rise
    // by ~8% per doubling at 512 -> 1024.
    const Sequence x({}, TailModel::closed_form(dsl::parse("-0.1311907142247577*altsign(k)*k^(-2.325471393338958)")));
    const auto pq = ExponentPair::from_p(2.0);
    REQUIRE(member(x, SpaceId::hp(2.0)).holds());
    const double e64 = reconstruction_error(x, 64, pq);
    const double e128 = reconstruction_error(x, 128, pq);
    CHECK(e128 > 0.0);
    CHECK(e128 < e64);
    double direct = 0.0;
    for (Index k = 129; k <= 1024; ++k) {
      const double kk = static_cast<double>(k);
      direct += std::pow(kk * x.eval(k) - kk * x.eval(k + 1), 2.0);
    }
    CHECK(e128 == doctest::Approx(std::sqrt(direct)).epsilon(1e-14));
  }
}
