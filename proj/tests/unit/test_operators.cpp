#include <cmath>

#include "doctest.h"

#include "hahnkit/operators.hpp"
#include "support.hpp"

using namespace hahnkit;

TEST_SUITE("operators") {
  TEST_CASE("delta") {
    const Sequence d = delta(constant_sequence(3.0));
    for (Index k = 1; k < 20; ++k) CHECK(d.eval(k) == 0.0);
    const Sequence e = delta(unit_sequence(1));
    CHECK(e.eval(1) == 1.0);
    CHECK(e.eval(2) == 0.0);
    const Sequence r = delta(reciprocal_sequence());
    for (Index k = 1; k < 100; ++k)
      CHECK(r.eval(k) == doctest::Approx(1.0 / (static_cast<double>(k) * static_cast<double>(k + 1))).epsilon(1e-14));
    CHECK(delta(Sequence({1.0, 2.0}, TailModel::unknown())).tail_unknown());
  }

  TEST_CASE("m_transform") {
    CHECK(m_transform(zero_sequence()).eval(4) == 0.0);
    const Sequence y = m_transform(reciprocal_sequence());
    for (Index k = 1; k < 2000; ++k) CHECK(y.eval(k) == doctest::Approx(1.0 / static_cast<double>(k + 1)).epsilon(1e-12));
    const Sequence u = m_transform(unit_sequence(1));
    CHECK(u.eval(1) == 1.0);
    CHECK(u.eval(2) == 0.0);
    CHECK(u.eventually_zero());
  }

  TEST_CASE("m_inverse") {
    const Sequence x = m_inverse(unit_sequence(1));
    CHECK(x.eval(1) == 1.0);
    CHECK(x.eval(2) == 0.0);
    const Sequence e3 = m_inverse(m_transform(unit_sequence(3)));
    for (Index k = 1; k <= 6; ++k) CHECK(e3.eval(k) == (k == 3 ? 1.0 : 0.0));
    CHECK(m_inverse(zero_sequence()).eval(1) == 0.0);
    const Sequence e2 = m_inverse(unit_sequence(2));
    CHECK(e2.eval(1) == 0.5);
    CHECK(e2.eval(2) == 0.5);
    CHECK(e2.eval(3) == 0.0);
    // Non-finite support is summed to the horizon and flagged.
    const Sequence h = m_inverse(reciprocal_sequence(), Horizon(16, 1));
    CHECK(h.tail_unknown());
    CHECK(h.label() == "horizon-limited");
    CHECK(h.prefix_size() == 32);
  }

  TEST_CASE("index_scale") {
    CHECK(index_scale(zero_sequence()).eval(5) == 0.0);
    const Sequence one = index_scale(reciprocal_sequence());
    for (Index k = 1; k < 100; ++k) CHECK(one.eval(k) == doctest::Approx(1.0).epsilon(1e-15));
    const Sequence e = index_scale(unit_sequence(2));
    CHECK(e.eval(2) == 2.0);
    CHECK(e.eval(1) == 0.0);
    CHECK(e.eval(3) == 0.0);
  }

  TEST_CASE("named matrices") {
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    CHECK(m.entry(3, 3) == 3.0);
    CHECK(m.entry(3, 4) == -3.0);
    CHECK(m.entry(3, 5) == 0.0);
    CHECK(m.entry(4, 3) == 0.0);
    CHECK(InfMatrix::named(NamedMatrix::Identity).entry(5, 5) == 1.0);
    CHECK(InfMatrix::named(NamedMatrix::Ones).entry(5, 9) == 1.0);
    CHECK(InfMatrix().entry(2, 2) == 0.0);
    CHECK_THROWS_AS(m.entry(0, 1), IndexError);
    CHECK_THROWS_AS(parse_named_matrix("hilbert"), InputError);
  }

  TEST_CASE("D and B matrices") {
    const InfMatrix d = InfMatrix::d_matrix(reciprocal_sequence());
    CHECK(d.entry(2, 4) == 0.5 / 4.0);
    CHECK(d.entry(3, 2) == 0.0);
    const InfMatrix b = InfMatrix::b_matrix(constant_sequence(1.0));
    CHECK(b.entry(1, 3) == doctest::Approx(1.0));
    CHECK(b.entry(4, 3) == 0.0);
    const InfMatrix b2 = InfMatrix::b_matrix(reciprocal_sequence());
    CHECK(b2.entry(1, 2) == doctest::Approx(0.75));
  }

  TEST_CASE("banded and dense matrices") {
    const InfMatrix a = InfMatrix::banded({0, 1}, {dsl::parse("n"), dsl::parse("-1/k")});
    CHECK(a.entry(2, 2) == 2.0);
    CHECK(a.entry(2, 3) == doctest::Approx(-1.0 / 3.0));
    CHECK(a.entry(2, 4) == 0.0);
    const InfMatrix b = InfMatrix::dense_block(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(b.entry(2, 1) == 4.0);
    CHECK(b.entry(3, 1) == 0.0);
    CHECK(b.entry(1, 4) == 0.0);
    CHECK(b.row_bound() == Index{2});
    CHECK(b.col_bound() == Index{3});
    CHECK(window(b, 2, 2) == std::vector<double>{1, 2, 4, 5});
    CHECK_THROWS_AS(InfMatrix::dense_block(2, 2, {1, 2, 3}), InputError);
  }

  TEST_CASE("mat_apply") {
    const Sequence x = reciprocal_sequence();
    const Sequence ix = mat_apply(InfMatrix::named(NamedMatrix::Identity), x);
    for (Index n = 1; n <= 1024; ++n) CHECK(ix.eval(n) == x.eval(n));
    const Sequence mx = mat_apply(InfMatrix::named(NamedMatrix::M), x);
    for (Index n = 1; n <= 1024; ++n) CHECK(mx.eval(n) == doctest::Approx(1.0 / static_cast<double>(n + 1)).epsilon(1e-12));
    const Sequence z = mat_apply(InfMatrix::named(NamedMatrix::Zero), x);
    CHECK(z.eval(7) == 0.0);
    CHECK_THROWS_AS(mat_apply(InfMatrix::named(NamedMatrix::Ones), constant_sequence(1.0)), DivergenceError);
  }

  TEST_CASE("bar_transform") {
    const InfMatrix bi = bar_transform(InfMatrix::named(NamedMatrix::Identity));
    for (Index n = 1; n <= 12; ++n)
      for (Index k = 1; k <= 12; ++k) CHECK(bi.entry(n, k) == doctest::Approx(k <= n ? 1.0 / static_cast<double>(n) : 0.0));
    CHECK(bar_transform(InfMatrix::named(NamedMatrix::Zero)).entry(3, 2) == 0.0);
    const InfMatrix b = bar_transform(InfMatrix::dense_block(1, 2, {1, 2}));
    CHECK(b.entry(1, 1) == 2.0);
    CHECK(b.entry(1, 2) == 1.0);
    CHECK(b.entry(1, 3) == 0.0);
    CHECK_THROWS_AS(bar_transform(InfMatrix::named(NamedMatrix::Ones)).entry(1, 1), DivergenceError);
  }

  TEST_CASE("tilde_transform") {
    CHECK(window(tilde_transform(InfMatrix::named(NamedMatrix::Identity)), 64, 64) ==
          window(InfMatrix::named(NamedMatrix::M), 64, 64));
    CHECK(tilde_transform(InfMatrix()).entry(4, 4) == 0.0);
    const InfMatrix ones = tilde_transform(InfMatrix::named(NamedMatrix::Ones));
    for (Index n = 1; n < 10; ++n) CHECK(ones.entry(n, 3) == 0.0);
  }

  TEST_CASE("triangles") {
    CHECK(check_triangle(InfMatrix::named(NamedMatrix::Identity), 32).is_triangle);
    CHECK_FALSE(check_triangle(InfMatrix::named(NamedMatrix::M), 32).is_triangle);
    CHECK_FALSE(check_triangle(InfMatrix::named(NamedMatrix::Ones), 8).is_triangle);
  }

  TEST_CASE("round trip on random finite sequences") {
    testgen::Gen g(101);
    for (int i = 0; i < 300; ++i) {
      const Sequence x = g.finite(512, 10.0);
      const Sequence r = m_inverse(m_transform(x));
      for (Index k = 1; k <= *x.support_end() + 2; ++k) CHECK(std::fabs(r.eval(k) - x.eval(k)) <= 1e-12);
    }
  }

  TEST_CASE("m_transform agrees with Named(M) bit for bit") {
    testgen::Gen g(102);
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    for (int i = 0; i < 50; ++i) {
      const Sequence x = g.finite(200, 10.0);
      const Sequence a = m_transform(x);
      const Sequence b = mat_apply(m, x);
      for (Index k = 1; k <= *x.support_end() + 1; ++k) CHECK(a.eval(k) == b.eval(k));
    }
  }

  TEST_CASE("m_transform is linear") {
    testgen::Gen g(103);
    for (int i = 0; i < 100; ++i) {
      const Sequence x = g.finite(64, 1.0);
      const Sequence z = g.finite(64, 1.0);
      const double al = g.uniform(-2, 2);
      const double be = g.uniform(-2, 2);
      const Sequence l = m_transform(linear_combination(al, x, be, z));
      const Sequence mx = m_transform(x);
      const Sequence mz = m_transform(z);
      for (Index k = 1; k <= 66; ++k) {
        const double r = al * mx.eval(k) + be * mz.eval(k);
        CHECK(std::fabs(l.eval(k) - r) <= 1e-12 * std::max(1.0, std::fabs(r)));
      }
    }
  }

  TEST_CASE("tilde identity on random dense blocks") {
    testgen::Gen g(104);
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    for (int i = 0; i < 200; ++i) {
      const InfMatrix a = g.dense(12, 12, 1.0);
      const Sequence z = g.finite(12, 1.0);
      const Sequence l = mat_apply(tilde_transform(a), z);
      const Sequence r = mat_apply(m, mat_apply(a, z));
      for (Index n = 1; n <= a.block_rows() + 1; ++n) CHECK(std::fabs(l.eval(n) - r.eval(n)) <= 1e-12);
    }
  }
}
