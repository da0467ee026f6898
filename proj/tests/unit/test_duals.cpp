#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "hahnkit/duals.hpp"
#include "support.hpp"

using namespace hahnkit;

TEST_SUITE("duals") {
  TEST_CASE("subset supremum examples") {
    const std::vector<double> c{1, -1, 1, 1};
    const SubsetSup s = subset_sup_exact(c, 2, 2, 1.0);
    CHECK(s.value == 2.0);
    CHECK(s.subset == std::vector<Index>{1});
    const SubsetSup z = subset_sup_exact(std::vector<double>(9, 0.0), 3, 3, 2.0);
    CHECK(z.value == 0.0);
    CHECK(z.subset.empty());
    const SubsetSup id = subset_sup(InfMatrix::named(NamedMatrix::Identity), 2.0, 3, 3);
    CHECK(id.value == 3.0);
    CHECK(id.subset == std::vector<Index>{1, 2, 3});
    CHECK(id.exact);
  }

  TEST_CASE("subset supremum against brute force") {
    const std::vector<double> c{1.0, -2.0, 0.5, 3.0, 1.0, -1.0, -2.5, 0.5, 2.0, 0.25, -0.75, 1.5};
    const SubsetSup q1 = subset_sup_exact(c, 4, 3, 1.0);
    CHECK(q1.value == oracle::kSubsetSupQ1);
    CHECK(q1.subset == std::vector<Index>{1, 3, 4});
    const SubsetSup q2 = subset_sup_exact(c, 4, 3, 2.0);
    CHECK(q2.value == oracle::kSubsetSupQ2);
    CHECK(q2.subset == std::vector<Index>{1, 3, 4});
    CHECK(subset_value(c, 4, 3, 2.0, q2.subset) == q2.value);
  }

  TEST_CASE("enumeration limits") {
    CHECK_THROWS_AS(subset_sup_exact(std::vector<double>(17, 1.0), 17, 1, 1.0), InputError);
    const SubsetSup g = subset_sup(InfMatrix::named(NamedMatrix::Identity), 1.0, 20, 20);
    CHECK_FALSE(g.exact);
    CHECK(g.value == 20.0);
    std::vector<double> bad{1.0, NAN};
    CHECK_THROWS_AS(subset_sup_exact(bad, 2, 1, 1.0), EvalError);
  }

  TEST_CASE("greedy never exceeds enumeration") {
    testgen::Gen g(401);
    for (int i = 0; i < 500; ++i) {
      const Index r = g.integer(1, 12);
      const Index c = g.integer(1, 8);
      const double q = g.integer(0, 1) ? 1.0 : 2.0;
      const auto e = g.values(r * c, 1.0);
      CHECK(subset_sup_greedy(e, r, c, q).value <= subset_sup_exact(e, r, c, q).value);
    }
  }

  TEST_CASE("single column closed form") {
    testgen::Gen g(402);
    for (int i = 0; i < 500; ++i) {
      const Index r = g.integer(1, 16);
      const auto e = g.values(r, 1.0);
      double pos = 0.0;
      double neg = 0.0;
      for (double v : e) (v > 0 ? pos : neg) += v;
      CHECK(subset_sup_exact(e, r, 1, 1.0).value == std::max(pos, -neg));
    }
  }

  TEST_CASE("supremum grows with rows and columns") {
    testgen::Gen g(403);
    for (int i = 0; i < 50; ++i) {
      const auto e = g.values(10 * 6, 1.0);
      double prev = 0.0;
      for (Index r = 1; r <= 10; ++r) {
        const double v = subset_sup_exact(std::span<const double>(e).first(static_cast<std::size_t>(r * 6)), r, 6, 2.0).value;
        CHECK(v >= prev);
        prev = v;
      }
    }
  }

  TEST_CASE("alpha dual") {
    CHECK(in_alpha_dual(zero_sequence(), SpaceId::hp(2.0)).holds());
    const Verdict e1 = in_alpha_dual(unit_sequence(1), SpaceId::hp(2.0), Horizon(Index{1} << 18, 2));
    CHECK(e1.holds());
    CHECK(e1.value == doctest::Approx(oracle::kBasel2_20).epsilon(1e-12));
    CHECK(in_alpha_dual(constant_sequence(1.0), SpaceId::h()).fails());
    CHECK(in_alpha_dual(Sequence({1.0}, TailModel::unknown()), SpaceId::h()).status == Status::Inconclusive);
  }

  TEST_CASE("beta dual family") {
    const auto f = beta_dual_family(reciprocal_sequence(), 2.0, 4);
    for (int n = 0; n < 4; ++n) CHECK(f[static_cast<std::size_t>(n)] == doctest::Approx(oracle::kBetaFamilyReciprocal[n]).epsilon(1e-14));
  }

  TEST_CASE("beta and gamma duals") {
    const auto pq = ExponentPair::from_p(2.0);
    const Verdict e1 = in_beta_dual_hp(unit_sequence(1), pq);
    CHECK(e1.holds());
    CHECK(e1.value == 1.0);
    CHECK(e1.witness == Index{1});
    CHECK(in_beta_dual_hp(constant_sequence(1.0), pq).fails());
    CHECK(in_beta_dual_hp(zero_sequence(), pq).holds());
    for (const Sequence& a : {unit_sequence(1), constant_sequence(1.0), zero_sequence(), alternating_sequence()}) {
      const Verdict b = in_beta_dual_hp(a, pq);
      const Verdict g = gamma_dual_hp(a, pq);
      CHECK(b.status == g.status);
      CHECK(b.value == g.value);
    }
  }

  TEST_CASE("sigma_inf") {
    CHECK(in_sigma_inf(alternating_sequence()).holds());
    CHECK(in_sigma_inf(Sequence({}, TailModel::closed_form(dsl::parse("k")))).fails());
    CHECK(in_sigma_inf(zero_sequence()).holds());
  }

  TEST_CASE("pairing partial sums") {
    CHECK(pairing_partial_sums(zero_sequence(), reciprocal_sequence()).verdict.holds());
    const PairingReport r = pairing_partial_sums(unit_sequence(1), reciprocal_sequence());
    CHECK(r.verdict.holds());
    CHECK(r.verdict.value == 1.0);
  }

  TEST_CASE("subset growth") {
    CHECK(subset_sup_growth(InfMatrix(), 1.0, Horizon()).holds());
    CHECK(subset_sup_growth(InfMatrix::named(NamedMatrix::Ones), 1.0, Horizon()).fails());
  }
}
