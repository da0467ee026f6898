#include "hahnkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "hahnkit/basis.hpp"
#include "hahnkit/duals.hpp"
#include "hahnkit/matclass.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"

namespace hahnkit {

using io::Json;

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Finding: return "finding";
  }
  return "fail";
}

int VerifyReport::count(Outcome o) const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [o](const PropertyResult& r) { return r.outcome == o; }));
}

int VerifyReport::exit_code() const {
  if (count(Outcome::Fail) > 0) return 1;
  if (strict_paper && count(Outcome::Finding) > 0) return 1;
  return 0;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"operators", "spaces", "basis", "duals", "matclass", "all"};
  return names;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Zero tail, support drawn from [1, max_support].
  Sequence finite(Index max_support, double amp) {
    std::vector<double> v(static_cast<std::size_t>(integer(1, max_support)));
    for (auto& e : v) e = uniform(-amp, amp);
    return Sequence(std::move(v));
  }

  InfMatrix dense(Index max_rows, Index max_cols, double amp) {
    const Index r = integer(1, max_rows);
    const Index c = integer(1, max_cols);
    std::vector<double> e(static_cast<std::size_t>(r * c));
    for (auto& v : e) v = uniform(-amp, amp);
    return InfMatrix::dense_block(r, c, std::move(e));
  }

  std::vector<double> block(Index rows, Index cols, double amp) {
    std::vector<double> e(static_cast<std::size_t>(rows * cols));
    for (auto& v : e) v = uniform(-amp, amp);
    return e;
  }

 private:
  std::mt19937_64 eng_;
};

dsl::Expr literal(double v) { return v < 0 ? -dsl::Expr::number(-v) : dsl::Expr::number(v); }
dsl::Expr k_pow(double s) { return dsl::Expr::power(dsl::Expr::var_k(), -s); }
dsl::Expr alt_k() { return dsl::Expr::call(dsl::Op::Altsign, dsl::Expr::var_k()); }

Sequence rule_sequence(dsl::Expr rule) { return Sequence({}, TailModel::closed_form(std::move(rule))); }

/// c k^{-s}
Sequence power_law(double c, double s) { return rule_sequence(literal(c) * k_pow(s)); }

struct Suite {
  std::string name;
  Horizon h;
  EstimatorConfig cfg;
  Gen gen;
  std::vector<PropertyResult>* out;

  void add(std::string property, Outcome o, std::string detail, Json data = Json::object()) {
    out->push_back(PropertyResult{name, std::move(property), o, std::move(detail), std::move(data)});
  }
  void check(std::string property, bool ok, std::string detail, Json data = Json::object()) {
    add(std::move(property), ok ? Outcome::Pass : Outcome::Fail, std::move(detail), std::move(data));
  }
};

// Row-major dot products of a finite block against sequence values.
double row_dot(const InfMatrix& a, Index n, const Sequence& x, Index cols) {
  double s = 0.0;
  for (Index k = 1; k <= cols; ++k) s += a.entry(n, k) * x.eval(k);
  return s;
}

// --- operators ---------------------------------------------------------------

void operators_suite(Suite& s) {
  {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const Sequence x = s.gen.finite(512, 10.0);
      const Sequence r = m_inverse(m_transform(x), s.h);
      for (Index k = 1; k <= *x.support_end() + 2; ++k) worst = std::max(worst, std::fabs(r.eval(k) - x.eval(k)));
    }
    s.check("m_round_trip", worst <= 1e-12, "300 samples, max componentwise error " + num(worst),
            Json{{"samples", 300}, {"max_error", worst}, {"tolerance", 1e-12}});
  }
  {
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      const Sequence x = s.gen.finite(256, 10.0);
      const Sequence a = m_transform(x);
      const Sequence b = mat_apply(m, x, s.h, s.cfg);
      for (Index k = 1; k <= *x.support_end() + 1; ++k)
        if (a.eval(k) != b.eval(k)) ++mismatches;
    }
    s.check("m_transform_matches_named_m", mismatches == 0, std::to_string(mismatches) + " mismatched entries",
            Json{{"samples", 100}, {"mismatches", mismatches}});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Sequence x = s.gen.finite(64, 1.0);
      const Sequence z = s.gen.finite(64, 1.0);
      const double al = s.gen.uniform(-2.0, 2.0);
      const double be = s.gen.uniform(-2.0, 2.0);
      const Sequence lhs = m_transform(linear_combination(al, x, be, z));
      const Sequence mx = m_transform(x);
      const Sequence mz = m_transform(z);
      for (Index k = 1; k <= 66; ++k) {
        const double rhs = al * mx.eval(k) + be * mz.eval(k);
        worst = std::max(worst, std::fabs(lhs.eval(k) - rhs) / std::max(1.0, std::fabs(rhs)));
      }
    }
    s.check("m_transform_linearity", worst <= 1e-12, "max scaled error " + num(worst),
            Json{{"samples", 100}, {"max_scaled_error", worst}, {"tolerance", 1e-12}});
  }
  {
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const InfMatrix a = s.gen.dense(12, 12, 1.0);
      const Sequence z = s.gen.finite(12, 1.0);
      const Sequence lhs = mat_apply(tilde_transform(a), z, s.h, s.cfg);
      const Sequence rhs = mat_apply(m, mat_apply(a, z, s.h, s.cfg), s.h, s.cfg);
      for (Index n = 1; n <= a.block_rows() + 1; ++n) worst = std::max(worst, std::fabs(lhs.eval(n) - rhs.eval(n)));
    }
    s.check("tilde_identity", worst <= 1e-12, "200 dense blocks, max |(tilde A z)_n - (M(Az))_n| = " + num(worst),
            Json{{"samples", 200}, {"max_error", worst}, {"tolerance", 1e-12}});
  }
  {
    const auto t = window(tilde_transform(InfMatrix::named(NamedMatrix::Identity)), 64, 64);
    const auto m = window(InfMatrix::named(NamedMatrix::M), 64, 64);
    s.check("tilde_of_identity_is_m", t == m, "64 x 64 window compared entrywise");
  }
  // The relation sum_k a_nk x_k = sum_k abar_nk y_k with x = M^{-1} y and
  // abar_nk = sum_{j>=k} a_nj / j. Exchanging the sums shows the kernel that
  // actually satisfies it is (1/k) sum_{j<=k} a_nj; both are measured.
  {
    int violated = 0;
    double worst = 0.0;
    double worst_alt = 0.0;
    Json first;
    for (int i = 0; i < 200; ++i) {
      const InfMatrix a = s.gen.dense(12, 12, 1.0);
      const Sequence y = s.gen.finite(16, 1.0);
      const Sequence x = m_inverse(y, s.h);
      const InfMatrix bar = bar_transform(a, s.h);
      const Index cols = a.block_cols();
      const Index ys = *y.support_end();
      bool bad = false;
      for (Index n = 1; n <= a.block_rows(); ++n) {
        const double lhs = row_dot(a, n, x, cols);
        double rhs = 0.0;
        for (Index k = 1; k <= std::max(cols, ys); ++k) rhs += bar.entry(n, k) * y.eval(k);
        double alt = 0.0;
        double prefix = 0.0;
        for (Index k = 1; k <= ys; ++k) {
          if (k <= cols) prefix += a.entry(n, k);
          alt += prefix / static_cast<double>(k) * y.eval(k);
        }
        const double d = std::fabs(lhs - rhs);
        worst = std::max(worst, d);
        worst_alt = std::max(worst_alt, std::fabs(lhs - alt));
        if (d > 1e-10 && !bad) {
          bad = true;
          if (first.is_null())
            first = Json{{"sample", i}, {"n", n}, {"lhs", lhs}, {"rhs", rhs}, {"matrix", io::to_json(a)},
                         {"y", io::to_json(y)}};
        }
      }
      if (bad) ++violated;
    }
    Json data{{"samples", 200},         {"violations", violated}, {"max_error", worst},
              {"tolerance", 1e-10},     {"first_counterexample", first},
              {"reordered_kernel_max_error", worst_alt}};
    if (violated == 0)
      s.add("bar_relation", Outcome::Pass, "relation holds on all 200 samples", std::move(data));
    else
      s.add("bar_relation", Outcome::Finding,
            std::to_string(violated) + "/200 samples violate sum a_nk x_k = sum abar_nk y_k (max " + num(worst) +
                "); the kernel (1/k) sum_{j<=k} a_nj satisfies it to " + num(worst_alt),
            std::move(data));
    s.check("bar_relation_reordered_kernel", worst_alt <= 1e-10,
            "kernel (1/k) sum_{j<=k} a_nj, max error " + num(worst_alt),
            Json{{"samples", 200}, {"max_error", worst_alt}, {"tolerance", 1e-10}});
  }
}

// --- spaces -----------------------------------------------------------------

void spaces_suite(Suite& s) {
  const double ps[] = {1.5, 2.0, 3.0};
  std::vector<Sequence> samples;
  for (int i = 0; i < 300; ++i) samples.push_back(s.gen.finite(512, 10.0));
  {
    int mismatches = 0;
    for (const auto& x : samples) {
      const Sequence y = m_transform(x);
      for (double p : ps)
        if (norm(x, SpaceId::hp(p), s.h, s.cfg).value != norm(y, SpaceId::ellp(p), s.h, s.cfg).value) ++mismatches;
    }
    s.check("norm_isomorphism", mismatches == 0, std::to_string(mismatches) + " of 900 norm pairs differ",
            Json{{"pairs", 900}, {"mismatches", mismatches}});
  }
  {
    int violations = 0;
    int inconsistent = 0;
    const Horizon r(64, 2);
    for (const auto& x : samples)
      for (double p : ps) {
        const DecompositionReport d = decomposition_check(x, ExponentPair::from_p(p), r, s.cfg);
        if (!d.inequality_holds()) ++violations;
        if (!d.consistent) ++inconsistent;
      }
    s.check("decomposition_inequality", violations == 0,
            std::to_string(violations) + " violations at r in {64, 128, 256}", Json{{"cases", 900}, {"violations", violations}});
    s.check("decomposition_consistency", inconsistent == 0,
            std::to_string(inconsistent) + " cases where hp disagrees with lp and int bvp",
            Json{{"cases", 900}, {"inconsistent", inconsistent}});
  }
  {
    int premises = 0;
    int violations = 0;
    int h_premises = 0;
    int h_violations = 0;
    for (int i = 0; i < 80; ++i) {
      const Sequence x = i % 2 == 0 ? s.gen.finite(64, 2.0) : power_law(s.gen.uniform(-2.0, 2.0), s.gen.uniform(2.5, 4.0));
      const double p = s.gen.coin() ? 1.5 : 2.0;
      const double r = p + s.gen.uniform(0.5, 2.0);
      if (member(x, SpaceId::hp(p), s.h, s.cfg).holds()) {
        ++premises;
        if (!member(x, SpaceId::hp(r), s.h, s.cfg).holds()) ++violations;
      }
      if (member(x, SpaceId::h(), s.h, s.cfg).holds()) {
        ++h_premises;
        if (member(x, SpaceId::ellp(1.0), s.h, s.cfg).fails() || member(index_scale(x), SpaceId::c0(), s.h, s.cfg).fails())
          ++h_violations;
      }
    }
    s.check("hp_inclusion", violations == 0 && premises > 0,
            std::to_string(premises) + " samples in hp(p), " + std::to_string(violations) + " not in hp(r) for r > p",
            Json{{"premises", premises}, {"violations", violations}});
    s.check("h_inside_l1_and_int_c0", h_violations == 0 && h_premises > 0,
            std::to_string(h_premises) + " samples in h, " + std::to_string(h_violations) + " violations",
            Json{{"premises", h_premises}, {"violations", h_violations}});
  }
  {
    const Sequence u = unit_sequence(1);
    const Sequence v = unit_sequence(2);
    auto pgram = [&](double p) {
      auto sq = [&](const Sequence& x) {
        const double n = norm(x, SpaceId::hp(p), s.h, s.cfg).value;
        return n * n;
      };
      return sq(linear_combination(1, u, 1, v)) + sq(linear_combination(1, u, -1, v)) - 2.0 * (sq(u) + sq(v));
    };
    const double p2 = pgram(2.0);
    const double p3 = pgram(3.0);
    s.check("parallelogram_dichotomy", std::fabs(p2) <= 1e-12 && std::fabs(p3) > 0.1,
            "P(2) = " + num(p2) + ", P(3) = " + num(p3), Json{{"P2", p2}, {"P3", p3}});
  }
  {
    const Sequence alt = alternating_sequence();
    const Verdict inf = member(alt, SpaceId::ellinf(), s.h, s.cfg);
    const Verdict hp = member(alt, SpaceId::hp(2.0), s.h, s.cfg);
    Json data{{"linf", io::to_json(inf)}, {"hp2", io::to_json(hp)}};
    if (inf.holds() && hp.fails())
      s.add("alternating_in_linf_not_hp", Outcome::Pass, "(-1)^k measured in linf and outside hp", std::move(data));
    else
      s.add("alternating_in_linf_not_hp", Outcome::Finding,
            std::string("linf ") + to_string(inf.status) + ", hp " + to_string(hp.status), std::move(data));
  }
  {
    // b_k = sum_{i<=k} 1/(i+1) is put forward as an element of hp outside linf.
    const Sequence b = harmonic_shifted_partial_sequence();
    const Verdict hp = member(b, SpaceId::hp(2.0), s.h, s.cfg);
    const Verdict inf = member(b, SpaceId::ellinf(), s.h, s.cfg);
    const auto vals = b.values(s.h.max() + 1);
    std::vector<double> terms;
    for (Index k = 1; k <= s.h.max(); ++k)
      terms.push_back(static_cast<double>(k) * std::fabs(vals[static_cast<std::size_t>(k - 1)] - vals[static_cast<std::size_t>(k)]));
    const Verdict series = sup_verdict(terms, s.h, s.cfg);
    const Verdict lim = limit_verdict(vals, s.h, LimitMode::Zero, LimitGate::Strict, s.cfg);
    const double term_h = terms.back();
    Json data{{"hp2", io::to_json(hp)},
              {"linf", io::to_json(inf)},
              {"diff_term_at_horizon", term_h},
              {"diff_term_expected", static_cast<double>(s.h.max()) / static_cast<double>(s.h.max() + 2)},
              {"limit_zero", io::to_json(lim)},
              {"diff_term_sup", io::to_json(series)},
              {"note", "hp requires x_k -> 0, so hp lies inside c0 and linf; hp minus linf is empty"}};
    if (hp.holds() && inf.fails())
      s.add("b_sequence_in_hp_not_linf", Outcome::Pass, "b measured in hp and outside linf", std::move(data));
    else
      s.add("b_sequence_in_hp_not_linf", Outcome::Finding,
            std::string("b: hp ") + to_string(hp.status) + ", linf " + to_string(inf.status) + ", k|db_k| at k = " +
                std::to_string(s.h.max()) + " is " + num(term_h) + ", lim b_k = 0 " + to_string(lim.status),
            std::move(data));
  }
  {
    // AK: sections converge in the hp norm.
    int members = 0;
    int bad = 0;
    for (int i = 0; i < 40; ++i) {
      const Sequence x = power_law(s.gen.uniform(-2.0, 2.0), s.gen.uniform(2.5, 4.0));
      if (!member(x, SpaceId::hp(2.0), s.h, s.cfg).holds()) continue;
      ++members;
      double prev = INFINITY;
      double first = 0.0;
      bool ok = true;
      for (Index m = 1; m <= 256; m *= 2) {
        const double e = norm(linear_combination(1, x, -1, truncate(x, m)), SpaceId::hp(2.0), s.h, s.cfg).value;
        if (m == 1) first = e;
        if (e > prev + 1e-12) ok = false;
        prev = e;
      }
      if (!(prev < 1e-3 * first)) ok = false;
      if (!ok) ++bad;
    }
    s.check("section_convergence", bad == 0 && members > 0,
            std::to_string(members) + " hp members, " + std::to_string(bad) + " with non-decreasing section error",
            Json{{"members", members}, {"violations", bad}});
  }
}

// --- basis ------------------------------------------------------------------

void basis_suite(Suite& s) {
  {
    double worst = 0.0;
    for (Index k = 1; k <= 256; ++k) {
      const Sequence y = m_transform(basis_element(k));
      for (Index j = 1; j <= k + 1; ++j) worst = std::max(worst, std::fabs(y.eval(j) - (j == k ? 1.0 : 0.0)));
    }
    s.check("basis_maps_to_units", worst <= 1e-15, "max |M b^(k) - e^k| over k <= 256: " + num(worst),
            Json{{"max_error", worst}});
  }
  {
    double worst = 0.0;
    double worst_err = 0.0;
    for (int i = 0; i < 300; ++i) {
      const Sequence x = s.gen.finite(512, 10.0);
      const Index m = *x.support_end() + s.gen.integer(0, 16);
      const Expansion e = expand(x, m);
      for (Index k = 1; k <= m + 1; ++k) worst = std::max(worst, std::fabs(e.reconstruction.eval(k) - x.eval(k)));
      worst_err = std::max(worst_err, reconstruction_error(x, m, ExponentPair::from_p(2.0), s.h, s.cfg));
    }
    s.check("exact_reconstruction", worst <= 1e-12 && worst_err == 0.0,
            "max componentwise error " + num(worst) + ", max reported error " + num(worst_err),
            Json{{"samples", 300}, {"max_error", worst}, {"max_reported", worst_err}});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Sequence x = s.gen.finite(64, 1.0);
      const Index m = s.gen.integer(1, 64);
      const Expansion e = expand(x, m);
      const Expansion again = expand(e.reconstruction, m);
      for (Index k = 1; k <= m; ++k)
        worst = std::max(worst, std::fabs(again.coefficients.eval(k) - e.coefficients.eval(k)));
    }
    s.check("coefficient_uniqueness", worst <= 1e-12, "max coefficient drift " + num(worst),
            Json{{"samples", 100}, {"max_error", worst}});
  }
  {
    int members = 0;
    int bad = 0;
    Json first;
    for (int i = 0; i < 100; ++i) {
      const double c = s.gen.uniform(-2.0, 2.0);
      const double sx = s.gen.uniform(2.5, 4.0);
      const Sequence x = power_law(c, sx);
      if (!member(x, SpaceId::hp(2.0), s.h, s.cfg).holds()) continue;
      ++members;
      std::vector<double> errs;
      for (Index m = 1; m <= 256; m *= 2) errs.push_back(reconstruction_error(x, m, ExponentPair::from_p(2.0), s.h, s.cfg));
      bool ok = errs.back() < 1e-3 * errs.front();
      for (std::size_t j = 1; j < errs.size(); ++j)
        if (errs[j] > errs[j - 1] + 1e-12) ok = false;
      if (!ok) {
        ++bad;
        if (first.is_null()) first = Json{{"c", c}, {"s", sx}, {"errors", errs}};
      }
    }
    s.check("reconstruction_error_decreasing", bad == 0 && members > 0,
            std::to_string(members) + " members on m = 1..256, " + std::to_string(bad) + " violations",
            Json{{"members", members}, {"violations", bad}, {"first_violation", first}});
  }
}

// --- duals ------------------------------------------------------------------

Sequence random_multiplier(Gen& g) {
  switch (g.integer(0, 4)) {
    case 0: return g.finite(64, 5.0);
    case 1: return power_law(g.uniform(-3.0, 3.0), g.uniform(0.0, 2.5));
    case 2: return rule_sequence(literal(g.uniform(-3.0, 3.0)) * alt_k() * k_pow(g.uniform(0.0, 1.5)));
    case 3: return constant_sequence(g.uniform(-3.0, 3.0));
    default: return rule_sequence(literal(g.uniform(-3.0, 3.0)) * alt_k() + literal(g.uniform(-1.0, 1.0)));
  }
}

void duals_suite(Suite& s) {
  {
    int bad = 0;
    for (int i = 0; i < 300; ++i) {
      const Index r = s.gen.integer(1, 12);
      const Index c = s.gen.integer(1, 8);
      const double q = s.gen.coin() ? 1.0 : 2.0;
      const auto e = s.gen.block(r, c, 1.0);
      if (subset_sup_greedy(e, r, c, q).value > subset_sup_exact(e, r, c, q).value) ++bad;
    }
    s.check("greedy_below_exact", bad == 0, std::to_string(bad) + " of 300 greedy values exceed enumeration",
            Json{{"samples", 300}, {"violations", bad}});
  }
  {
    int bad = 0;
    for (int i = 0; i < 300; ++i) {
      const Index r = s.gen.integer(1, 16);
      const auto e = s.gen.block(r, 1, 1.0);
      double pos = 0.0;
      double neg = 0.0;
      for (double v : e) (v > 0 ? pos : neg) += v;
      if (subset_sup_exact(e, r, 1, 1.0).value != std::max(pos, -neg)) ++bad;
    }
    s.check("single_column_oracle", bad == 0, std::to_string(bad) + " of 300 columns differ from max(P, -N)",
            Json{{"samples", 300}, {"mismatches", bad}});
  }
  {
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      const auto e = s.gen.block(12, 8, 1.0);
      const double q = s.gen.coin() ? 1.0 : 2.0;
      double prev = -1.0;
      for (Index r = 1; r <= 12; ++r) {
        const double v = subset_sup_exact(std::span<const double>(e).first(static_cast<std::size_t>(r * 8)), r, 8, q).value;
        if (v < prev) ++bad;
        prev = v;
      }
      prev = -1.0;
      for (Index c = 1; c <= 8; ++c) {
        std::vector<double> sub;
        for (Index n = 0; n < 12; ++n)
          for (Index k = 0; k < c; ++k) sub.push_back(e[static_cast<std::size_t>(n * 8 + k)]);
        const double v = subset_sup_exact(sub, 12, c, q).value;
        if (v < prev) ++bad;
        prev = v;
      }
    }
    s.check("subset_sup_monotone", bad == 0, std::to_string(bad) + " decreases along row or column growth",
            Json{{"samples", 100}, {"violations", bad}});
  }
  {
    int bad = 0;
    for (int i = 0; i < 300; ++i) {
      const Sequence a = random_multiplier(s.gen);
      const auto pq = ExponentPair::from_p(s.gen.uniform(1.2, 4.0));
      const Verdict b = in_beta_dual_hp(a, pq, s.h, s.cfg);
      const Verdict g = gamma_dual_hp(a, pq, s.h, s.cfg);
      if (b.status != g.status || b.value != g.value) ++bad;
    }
    s.check("beta_gamma_agreement", bad == 0, std::to_string(bad) + " of 300 verdicts differ",
            Json{{"samples", 300}, {"mismatches", bad}});
  }
  {
    // Membership in the beta dual of hp is put forward as implying a in cs.
    const auto pq = ExponentPair::from_p(2.0);
    std::vector<Sequence> cands{alternating_sequence()};
    for (int i = 0; i < 60; ++i) cands.push_back(random_multiplier(s.gen));
    int premises = 0;
    Json counter = Json::array();
    for (const auto& a : cands) {
      const Verdict d3 = in_beta_dual_hp(a, pq, s.h, s.cfg);
      if (!d3.holds()) continue;
      ++premises;
      const Verdict cs = member(a, SpaceId::cs(), s.h, s.cfg);
      if (cs.fails() && counter.size() < 5)
        counter.push_back(Json{{"a", io::to_json(a)}, {"d3", io::to_json(d3)}, {"cs", io::to_json(cs)}});
    }
    Json data{{"candidates", cands.size()}, {"in_d3", premises}, {"counterexamples", counter}};
    if (counter.empty())
      s.add("d3_inside_cs", Outcome::Pass, std::to_string(premises) + " d3 members, none outside cs", std::move(data));
    else
      s.add("d3_inside_cs", Outcome::Finding,
            "d3 members measured outside cs (first: " + counter[0]["a"].dump() + ")", std::move(data));
  }
  {
    int premises = 0;
    Json stalled = Json::array();
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
      const Sequence a = random_multiplier(s.gen);
      const Sequence x = i % 3 == 0 ? s.gen.finite(64, 2.0) : power_law(s.gen.uniform(-2.0, 2.0), s.gen.uniform(2.5, 4.0));
      const double p = s.gen.uniform(1.2, 4.0);
      if (!in_beta_dual_hp(a, ExponentPair::from_p(p), s.h, s.cfg).holds()) continue;
      if (!member(x, SpaceId::hp(p), s.h, s.cfg).holds()) continue;
      ++premises;
      const PairingReport r = pairing_partial_sums(a, x, s.h, s.cfg);
      if (!r.verdict.holds()) {
        ++failures;
        if (stalled.size() < 5)
          stalled.push_back(Json{{"a", io::to_json(a)}, {"x", io::to_json(x)}, {"p", p}, {"verdict", io::to_json(r.verdict)}});
      }
    }
    Json data{{"pairs", premises}, {"non_stalling", failures}, {"examples", stalled}};
    if (failures == 0)
      s.add("pairing_soundness", Outcome::Pass, std::to_string(premises) + " pairs, all partial sums stall", std::move(data));
    else
      s.add("pairing_soundness", Outcome::Finding, std::to_string(failures) + " of " + std::to_string(premises) +
                                                      " pairs without a stalling pairing",
            std::move(data));
  }
}

// --- matclass ---------------------------------------------------------------

Sequence sample_in(const SpaceId& sp, Gen& g) {
  if (g.coin()) return g.finite(32, 2.0);
  const double c = g.uniform(-2.0, 2.0);
  switch (sp.kind) {
    case SpaceKind::Ellp: return power_law(c, g.uniform(2.0 / sp.p + 0.1, 4.0));
    case SpaceKind::Ellinf: return rule_sequence(literal(c) * alt_k() + literal(g.uniform(-1.0, 1.0)));
    case SpaceKind::C: return rule_sequence(literal(g.uniform(-1.0, 1.0)) + literal(c) * k_pow(g.uniform(0.5, 3.0)));
    case SpaceKind::C0: return power_law(c, g.uniform(0.5, 3.0));
    default: return power_law(c, g.uniform(2.5, 4.0));
  }
}

bool same_conditions(const ConditionReport& a, const ConditionReport& b) {
  Json ja = io::to_json(a);
  Json jb = io::to_json(b);
  return ja["conditions"] == jb["conditions"] && ja["overall"] == jb["overall"];
}

void matclass_suite(Suite& s) {
  {
    std::vector<std::string> missing;
    for (ConditionTag t : kAllConditions) {
      bool found = false;
      for (ClassKind k : kAllClasses) {
        const auto d = dispatch(k);
        if (std::find(d.begin(), d.end(), t) != d.end()) found = true;
      }
      if (!found) missing.push_back(condition_id(t));
    }
    s.check("dispatch_completeness", missing.empty(), std::to_string(missing.size()) + " unreachable conditions",
            Json{{"missing", missing}});
  }
  {
    std::vector<std::string> bad;
    for (ClassKind k : kAllClasses) {
      const ClassId cls = make_class(k, 2.0);
      if (!classify(InfMatrix::named(NamedMatrix::Zero), cls, s.h, s.cfg).overall.holds()) bad.push_back(to_string(cls));
    }
    s.check("zero_matrix_in_every_class", bad.empty(), std::to_string(bad.size()) + " classes reject the zero matrix",
            Json{{"rejected", bad}});
  }
  {
    const ClassId cls = make_class(ClassKind::Lp_Linf, 2.0);
    const ConditionReport id = classify(InfMatrix::named(NamedMatrix::Identity), cls, s.h, s.cfg);
    const ConditionReport ones = classify(InfMatrix::named(NamedMatrix::Ones), cls, s.h, s.cfg);
    const double v = id.conditions.empty() ? 0.0 : id.conditions[0].verdict.value;
    s.check("identity_and_ones_fixtures",
            id.overall.holds() && v == 1.0 && ones.overall.fails() && ones.overall.witness.has_value(),
            std::string("identity ") + to_string(id.overall.status) + " value " + num(v) + ", ones " +
                to_string(ones.overall.status),
            Json{{"identity", io::to_json(id)}, {"ones", io::to_json(ones)}});
  }
  {
    int bad = 0;
    std::vector<InfMatrix> mats{InfMatrix::named(NamedMatrix::Identity), InfMatrix::named(NamedMatrix::Zero)};
    for (int i = 0; i < 8; ++i) mats.push_back(s.gen.dense(8, 8, 1.0));
    const ClassKind chains[2][3] = {{ClassKind::C_H, ClassKind::C0_H, ClassKind::Linf_H},
                                    {ClassKind::C_Hp, ClassKind::C0_Hp, ClassKind::Linf_Hp}};
    for (const auto& a : mats)
      for (const auto& chain : chains) {
        const ConditionReport r0 = classify(a, make_class(chain[0], 2.0), s.h, s.cfg);
        for (int j = 1; j < 3; ++j)
          if (!same_conditions(r0, classify(a, make_class(chain[j], 2.0), s.h, s.cfg))) ++bad;
      }
    s.check("equality_chain", bad == 0, std::to_string(bad) + " report mismatches across c, c0, linf sources",
            Json{{"matrices", mats.size()}, {"mismatches", bad}});
  }
  {
    const InfMatrix m = InfMatrix::named(NamedMatrix::M);
    double worst = 0.0;
    int checked = 0;
    int bad = 0;
    for (int i = 0; i < 40; ++i) {
      const InfMatrix a = s.gen.dense(10, 10, 1.0);
      if (!classify(a, make_class(ClassKind::Hp_Linf, 2.0), s.h, s.cfg).overall.holds()) continue;
      ++checked;
      const Sequence z = s.gen.finite(10, 1.0);
      const Sequence maz = mat_apply(m, mat_apply(a, z, s.h, s.cfg), s.h, s.cfg);
      const Sequence tz = mat_apply(tilde_transform(a), z, s.h, s.cfg);
      for (Index n = 1; n <= a.block_rows() + 1; ++n) worst = std::max(worst, std::fabs(maz.eval(n) - tz.eval(n)));
      if (member(mat_apply(a, z, s.h, s.cfg), SpaceId::h(), s.h, s.cfg).fails()) ++bad;
    }
    s.check("tilde_consistency", worst <= 1e-12 && bad == 0 && checked > 0,
            std::to_string(checked) + " matrices, max |M(Az) - tilde A z| = " + num(worst),
            Json{{"matrices", checked}, {"max_error", worst}, {"h_failures", bad}});
  }
  {
    Json findings = Json::array();
    int pairs = 0;
    for (ClassKind k : kAllClasses) {
      const ClassId cls = make_class(k, 2.0);
      int got = 0;
      for (int attempt = 0; attempt < 40 && got < 5; ++attempt) {
        const InfMatrix a = s.gen.dense(8, 8, 1.0);
        if (!classify(a, cls, s.h, s.cfg).overall.holds()) continue;
        ++got;
        const Sequence x = sample_in(cls.source, s.gen);
        try {
          const Verdict v = member(mat_apply(a, x, s.h, s.cfg), cls.target, s.h, s.cfg);
          if (v.fails())
            findings.push_back(Json{{"class", to_string(cls)}, {"matrix", io::to_json(a)}, {"x", io::to_json(x)},
                                    {"verdict", io::to_json(v)}});
        } catch (const std::exception& e) {
          findings.push_back(Json{{"class", to_string(cls)}, {"matrix", io::to_json(a)}, {"x", io::to_json(x)},
                                  {"exception", e.what()}});
        }
        ++pairs;
      }
    }
    Json data{{"pairs", pairs}, {"findings", findings}};
    if (findings.empty())
      s.add("transform_soundness", Outcome::Pass, std::to_string(pairs) + " (A, x) pairs, no image measured outside the target",
            std::move(data));
    else
      s.add("transform_soundness", Outcome::Finding, std::to_string(findings.size()) + " images outside the target",
            std::move(data));
  }
}

using SuiteFn = void (*)(Suite&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"operators", operators_suite}, {"spaces", spaces_suite},     {"basis", basis_suite},
    {"duals", duals_suite},         {"matclass", matclass_suite},
};

}  // namespace

VerifyReport run_suite(std::string_view suite, const VerifyOptions& options) {
  const bool all = suite == "all";
  bool known = all;
  for (const auto& e : kSuites) known = known || suite == e.name;
  if (!known) throw InputError("unknown suite '" + std::string(suite) + "' (operators, spaces, basis, duals, matclass, all)");

  VerifyReport report;
  report.suite = std::string(suite);
  report.seed = options.seed;
  report.config = options.config;
  report.horizon = options.config.horizon();
  report.strict_paper = options.strict_paper;

  const auto start = std::chrono::steady_clock::now();
  std::uint64_t index = 0;
  for (const auto& e : kSuites) {
    ++index;
    if (!all && suite != e.name) continue;
    // Each suite draws from its own stream, so a suite gives the same
    // results alone and inside "all".
    Suite s{e.name, report.horizon, options.config, Gen(options.seed + 0x9E3779B97F4A7C15ULL * index), &report.results};
    e.fn(s);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const VerifyReport& r, bool with_time) {
  Json j;
  j["schema"] = io::kSchema;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["strict_paper"] = r.strict_paper;
  j["horizons"] = io::horizons_json(r.horizon);
  j["config"] = io::to_json(r.config);
  j["properties"] = Json::array();
  for (const auto& p : r.results)
    j["properties"].push_back(
        Json{{"suite", p.suite}, {"name", p.name}, {"outcome", to_string(p.outcome)}, {"detail", p.detail}, {"data", p.data}});
  j["summary"] = Json{{"pass", r.count(Outcome::Pass)}, {"fail", r.count(Outcome::Fail)}, {"finding", r.count(Outcome::Finding)}};
  if (with_time) j["wall_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace hahnkit
