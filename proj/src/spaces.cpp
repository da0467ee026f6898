#include "hahnkit/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "hahnkit/operators.hpp"

namespace hahnkit {

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("space exponent must satisfy 1 <= p < infinity");
}

}  // namespace

SpaceId SpaceId::ellp(double p) {
  check_exponent(p);
  return {SpaceKind::Ellp, p, SpaceKind::Ellp};
}

SpaceId SpaceId::bvp(double p) {
  check_exponent(p);
  return {SpaceKind::Bvp, p, SpaceKind::Ellp};
}

SpaceId SpaceId::bv0p(double p) {
  check_exponent(p);
  return {SpaceKind::Bv0p, p, SpaceKind::Ellp};
}

SpaceId SpaceId::hp(double p) {
  check_exponent(p);
  return {SpaceKind::Hp, p, SpaceKind::Ellp};
}

SpaceId SpaceId::int_of(const SpaceId& base) {
  if (base.kind == SpaceKind::IntOf) throw InputError("int_of may not be nested");
  return {SpaceKind::IntOf, base.p, base.kind};
}

bool SpaceId::has_exponent() const noexcept {
  const SpaceKind k = kind == SpaceKind::IntOf ? inner : kind;
  return k == SpaceKind::Ellp || k == SpaceKind::Bvp || k == SpaceKind::Bv0p || k == SpaceKind::Hp;
}

SpaceId SpaceId::base() const {
  if (kind != SpaceKind::IntOf) return *this;
  return {inner, p, SpaceKind::Ellp};
}

bool operator==(const SpaceId& a, const SpaceId& b) noexcept {
  if (a.kind != b.kind) return false;
  if (a.kind == SpaceKind::IntOf && a.inner != b.inner) return false;
  return !a.has_exponent() || a.p == b.p;
}

std::string format_exponent(double p) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, res.ptr);
}

std::string to_string(const SpaceId& s) {
  switch (s.kind) {
    case SpaceKind::Ellp: return "lp:" + format_exponent(s.p);
    case SpaceKind::Ellinf: return "linf";
    case SpaceKind::C: return "c";
    case SpaceKind::C0: return "c0";
    case SpaceKind::Bs: return "bs";
    case SpaceKind::Cs: return "cs";
    case SpaceKind::Bvp: return "bvp:" + format_exponent(s.p);
    case SpaceKind::Bv0p: return "bv0p:" + format_exponent(s.p);
    case SpaceKind::IntOf: return "int:" + to_string(s.base());
    case SpaceKind::H: return "h";
    case SpaceKind::Hp: return "hp:" + format_exponent(s.p);
    case SpaceKind::SigmaInf: return "sigma_inf";
  }
  return "?";
}

SpaceId parse_space(std::string_view text) {
  const std::string orig(text);
  if (text.starts_with("int:")) {
    const SpaceId base = parse_space(text.substr(4));
    if (base.kind == SpaceKind::IntOf) throw InputError("space '" + orig + "': int: may not be nested");
    return SpaceId::int_of(base);
  }
  std::string_view name = text;
  std::optional<double> p;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    const std::string_view num = text.substr(colon + 1);
    double v = 0.0;
    auto res = std::from_chars(num.data(), num.data() + num.size(), v);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size())
      throw InputError("space '" + orig + "': bad exponent");
    p = v;
  }
  auto need_p = [&](SpaceId (*make)(double)) {
    if (!p) throw InputError("space '" + orig + "' needs an exponent, e.g. " + std::string(name) + ":2");
    return make(*p);
  };
  auto no_p = [&](SpaceId s) {
    if (p) throw InputError("space '" + orig + "' takes no exponent");
    return s;
  };
  if (name == "lp") return need_p(&SpaceId::ellp);
  if (name == "bvp") return need_p(&SpaceId::bvp);
  if (name == "bv0p") return need_p(&SpaceId::bv0p);
  if (name == "hp") return need_p(&SpaceId::hp);
  if (name == "linf") return no_p(SpaceId::ellinf());
  if (name == "c") return no_p(SpaceId::c());
  if (name == "c0") return no_p(SpaceId::c0());
  if (name == "bs") return no_p(SpaceId::bs());
  if (name == "cs") return no_p(SpaceId::cs());
  if (name == "h") return no_p(SpaceId::h());
  if (name == "sigma_inf") return no_p(SpaceId::sigma_inf());
  throw InputError("unknown space '" + orig + "' (lp:p, linf, c, c0, bs, cs, bvp:p, bv0p:p, int:<space>, h, hp:p, sigma_inf)");
}

double abs_pow(double v, double p) {
  const double a = std::fabs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

namespace {

// Values x_1..x_len: the whole support plus one trailing zero for Zero
// tails, otherwise horizon.max() + 1 values (fewer for Unknown tails).
struct Samples {
  std::vector<double> x;
  bool exact = false;
  bool complete = true;
};

Samples sample(const Sequence& x, const Horizon& h) {
  if (auto s = x.support_end()) return {x.values(*s + 1), true, true};
  if (x.tail_unknown()) return {x.values(std::min(h.max() + 1, x.prefix_size())), false, false};
  return {x.values(h.max() + 1), false, true};
}

std::vector<double> pow_terms(const std::vector<double>& x, double p) {
  std::vector<double> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) t[i] = abs_pow(x[i], p);
  return t;
}

/// (k |x_k - x_{k+1}|)^p for k = 1..len-1.
std::vector<double> weighted_diff_terms(const std::vector<double>& x, double p) {
  std::vector<double> t(x.empty() ? 0 : x.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    t[i] = abs_pow(std::fabs(k * x[i] - k * x[i + 1]), p);
  }
  return t;
}

/// |x_k - x_{k-1}|^p with x_0 = 0.
std::vector<double> backward_diff_terms(const std::vector<double>& x, double p) {
  std::vector<double> t(x.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    t[i] = abs_pow(x[i] - prev, p);
    prev = x[i];
  }
  return t;
}

std::vector<double> partial_sums(const std::vector<double>& x) {
  std::vector<double> s(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i];
    s[i] = acc;
  }
  return s;
}

std::vector<double> abs_values(std::vector<double> v) {
  for (double& x : v) x = std::fabs(x);
  return v;
}

std::vector<double> cesaro_abs(const std::vector<double>& s) {
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = std::fabs(s[i]) / static_cast<double>(i + 1);
  return v;
}

std::size_t used_count(const Samples& s, std::size_t size, const Horizon& h) {
  return s.exact ? size : std::min(size, static_cast<std::size_t>(h.max()));
}

// Partial sum (sum of terms) and sup, with the estimator deciding divergence.
struct Measured {
  double value = 0.0;
  Index used = 0;
};

Measured measure_series(const std::vector<double>& terms, const Samples& s, const Horizon& h,
                        const EstimatorConfig& cfg, const std::string& what) {
  const std::size_t n = used_count(s, terms.size(), h);
  if (!s.exact) {
    const Verdict v = series_verdict(terms, h, cfg, s.complete);
    if (v.fails()) throw DivergenceError(what + ": series diverges", v);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += terms[i];
  return {sum, static_cast<Index>(n)};
}

Measured measure_sup(const std::vector<double>& values, const Samples& s, const Horizon& h,
                     const EstimatorConfig& cfg, const std::string& what) {
  const std::size_t n = used_count(s, values.size(), h);
  if (!s.exact) {
    const Verdict v = sup_verdict(values, h, cfg, s.complete);
    if (v.fails()) throw DivergenceError(what + ": supremum grows without bound", v);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, values[i]);
  return {best, static_cast<Index>(n)};
}

double root(double v, double p) { return p == 1.0 ? v : std::pow(v, 1.0 / p); }

}  // namespace

NormReport norm(const Sequence& x, const SpaceId& space, const Horizon& horizon, const EstimatorConfig& cfg) {
  if (space.kind == SpaceKind::IntOf) {
    NormReport r = norm(index_scale(x), space.base(), horizon, cfg);
    r.space = space;
    return r;
  }
  const Samples s = sample(x, horizon);
  const std::string what = "norm in " + to_string(space);
  NormReport r;
  r.space = space;
  r.exact = s.exact;
  Measured m;
  switch (space.kind) {
    case SpaceKind::Ellp:
      m = measure_series(pow_terms(s.x, space.p), s, horizon, cfg, what);
      m.value = root(m.value, space.p);
      break;
    case SpaceKind::Ellinf:
    case SpaceKind::C:
    case SpaceKind::C0: m = measure_sup(abs_values(s.x), s, horizon, cfg, what); break;
    case SpaceKind::Bs:
    case SpaceKind::Cs: m = measure_sup(abs_values(partial_sums(s.x)), s, horizon, cfg, what); break;
    case SpaceKind::Bvp:
    case SpaceKind::Bv0p:
      m = measure_series(backward_diff_terms(s.x, space.p), s, horizon, cfg, what);
      m.value = root(m.value, space.p);
      break;
    case SpaceKind::Hp:
      m = measure_series(weighted_diff_terms(s.x, space.p), s, horizon, cfg, what);
      m.value = root(m.value, space.p);
      break;
    case SpaceKind::H: {
      m = measure_series(weighted_diff_terms(s.x, 1.0), s, horizon, cfg, what);
      const Measured sup = measure_sup(abs_values(s.x), s, horizon, cfg, what);
      m.value += sup.value;
      m.used = std::max(m.used, sup.used);
      break;
    }
    case SpaceKind::SigmaInf: m = measure_sup(cesaro_abs(partial_sums(s.x)), s, horizon, cfg, what); break;
    case SpaceKind::IntOf: break;
  }
  r.value = m.value;
  r.horizon_used = m.used;
  return r;
}

Verdict member(const Sequence& x, const SpaceId& space, const Horizon& horizon, const EstimatorConfig& cfg) {
  if (space.kind == SpaceKind::IntOf) return member(index_scale(x), space.base(), horizon, cfg);
  if (x.eventually_zero()) {
    Verdict v;
    v.status = Status::Holds;
    v.value = norm(x, space, horizon, cfg).value;
    v.note = "finite support";
    return v;
  }
  const Samples s = sample(x, horizon);
  const bool c = s.complete;
  const double p = space.p;
  auto zero_limit = [&](LimitGate gate) { return limit_verdict(s.x, horizon, LimitMode::Zero, gate, cfg, c); };
  switch (space.kind) {
    case SpaceKind::Ellp: return series_verdict(pow_terms(s.x, p), horizon, cfg, c);
    case SpaceKind::Ellinf: return sup_verdict(abs_values(s.x), horizon, cfg, c);
    case SpaceKind::C: return limit_verdict(s.x, horizon, LimitMode::Exists, LimitGate::Trend, cfg, c);
    case SpaceKind::C0: return zero_limit(LimitGate::Trend);
    case SpaceKind::Bs: return sup_verdict(abs_values(partial_sums(s.x)), horizon, cfg, c);
    case SpaceKind::Cs:
      return limit_verdict(partial_sums(s.x), horizon, LimitMode::Exists, LimitGate::Trend, cfg, c);
    case SpaceKind::Bvp: return series_verdict(backward_diff_terms(s.x, p), horizon, cfg, c);
    case SpaceKind::Bv0p:
      return conjoin({series_verdict(backward_diff_terms(s.x, p), horizon, cfg, c), zero_limit(LimitGate::Trend)});
    case SpaceKind::H:
      return conjoin({series_verdict(weighted_diff_terms(s.x, 1.0), horizon, cfg, c), zero_limit(LimitGate::Strict)});
    case SpaceKind::Hp:
      return conjoin({series_verdict(weighted_diff_terms(s.x, p), horizon, cfg, c), zero_limit(LimitGate::Strict)});
    case SpaceKind::SigmaInf: return sup_verdict(cesaro_abs(partial_sums(s.x)), horizon, cfg, c);
    case SpaceKind::IntOf: break;
  }
  return Verdict{};
}

bool DecompositionReport::inequality_holds() const {
  return std::all_of(inequality.begin(), inequality.end(), [](const InequalityPoint& p) { return p.holds; });
}

DecompositionReport decomposition_check(const Sequence& x, const ExponentPair& pq, const Horizon& horizon,
                                        const EstimatorConfig& cfg) {
  const double p = pq.p;
  DecompositionReport rep;
  rep.hp = member(x, SpaceId::hp(p), horizon, cfg);
  rep.ellp = member(x, SpaceId::ellp(p), horizon, cfg);
  rep.int_bvp = member(x, SpaceId::int_of(SpaceId::bvp(p)), horizon, cfg);
  const bool both_hold = rep.ellp.holds() && rep.int_bvp.holds();
  const bool either_fails = rep.ellp.fails() || rep.int_bvp.fails();
  rep.consistent = !(rep.hp.holds() && either_fails) && !(rep.hp.fails() && both_hold);

  const Index need = std::min(horizon.max() + 1, x.evaluable_end());
  const std::vector<double> xs = x.values(need);
  const double scale = std::pow(2.0, p);
  double lhs = 0.0;
  double ax = 0.0;
  double adk = 0.0;
  Index k = 0;
  for (Index r : horizon.points()) {
    if (r + 1 > need) break;
    for (; k < r; ++k) {
      const double xk = xs[static_cast<std::size_t>(k)];
      const double xk1 = xs[static_cast<std::size_t>(k + 1)];
      const double kk = static_cast<double>(k + 1);
      lhs += abs_pow(kk * std::fabs(xk - xk1), p);
      ax += abs_pow(xk, p);
      adk += abs_pow(kk * xk - (kk + 1.0) * xk1, p);
    }
    const double rhs = scale * (ax + adk);
    rep.inequality.push_back(InequalityPoint{r, lhs, rhs, lhs <= rhs});
  }
  return rep;
}

}  // namespace hahnkit
