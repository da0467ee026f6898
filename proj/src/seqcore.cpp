#include "hahnkit/seqcore.hpp"

#include <algorithm>
#include <cmath>

namespace hahnkit {

TailModel TailModel::closed_form(dsl::Expr rule) {
  if (rule.uses_n()) throw InputError("sequence tail rule may only use the variable k");
  return TailModel(Kind::ClosedForm, std::move(rule));
}

namespace {

std::shared_ptr<const std::vector<double>> empty_prefix() {
  static const auto empty = std::make_shared<const std::vector<double>>();
  return empty;
}

}  // namespace

Sequence::Sequence() : prefix_(empty_prefix()), tail_(TailModel::zero()) {}

Sequence::Sequence(std::vector<double> prefix, TailModel tail, std::string label)
    : tail_(std::move(tail)), label_(std::move(label)) {
  if (prefix.size() > kMaxPrefix) throw InputError("sequence prefix exceeds 2^22 entries");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!std::isfinite(prefix[i]))
      throw InputError("sequence entry " + std::to_string(i + 1) + " is not finite");
  }
  if (tail_.kind() == TailModel::Kind::Zero) {
    auto last = std::find_if(prefix.rbegin(), prefix.rend(), [](double v) { return v != 0.0; });
    support_end_ = static_cast<Index>(prefix.rend() - last);
  }
  prefix_ = std::make_shared<const std::vector<double>>(std::move(prefix));
}

double Sequence::eval(Index k) const {
  if (k < 1) throw IndexError("sequence index must be >= 1, got " + std::to_string(k));
  if (k <= prefix_size()) return (*prefix_)[static_cast<std::size_t>(k - 1)];
  switch (tail_.kind()) {
    case TailModel::Kind::Zero: return 0.0;
    case TailModel::Kind::ClosedForm: return tail_.rule().eval(1, k);
    case TailModel::Kind::Unknown: break;
  }
  throw EvalError("index " + std::to_string(k) + " lies in an unknown tail");
}

Sequence Sequence::with_label(std::string label) const {
  Sequence s = *this;
  s.label_ = std::move(label);
  return s;
}

std::optional<Index> Sequence::support_end() const noexcept {
  if (tail_.kind() != TailModel::Kind::Zero) return std::nullopt;
  return support_end_;
}

Index Sequence::evaluable_end() const noexcept {
  return tail_.kind() == TailModel::Kind::Unknown ? prefix_size() : kUnbounded;
}

std::vector<double> Sequence::values(Index count) const {
  std::vector<double> out(static_cast<std::size_t>(std::max<Index>(count, 0)));
  const Index stored = std::min(count, prefix_size());
  std::copy_n(prefix_->begin(), stored, out.begin());
  for (Index k = stored + 1; k <= count; ++k) out[static_cast<std::size_t>(k - 1)] = eval(k);
  return out;
}

Sequence zero_sequence() { return Sequence({}, TailModel::zero(), "zero"); }

Sequence unit_sequence(Index k) {
  if (k < 1) throw IndexError("unit sequence index must be >= 1");
  if (static_cast<std::size_t>(k) > kMaxPrefix) throw IndexError("unit sequence index beyond prefix cap");
  std::vector<double> p(static_cast<std::size_t>(k), 0.0);
  p.back() = 1.0;
  return Sequence(std::move(p), TailModel::zero(), "e^" + std::to_string(k));
}

Sequence constant_sequence(double c) {
  return Sequence({}, TailModel::closed_form(dsl::Expr::number(c)), "constant");
}

Sequence reciprocal_sequence() { return Sequence({}, TailModel::closed_form(dsl::parse("1/k")), "reciprocal"); }

Sequence alternating_sequence() {
  return Sequence({}, TailModel::closed_form(dsl::parse("altsign(k)")), "alternating");
}

Sequence harmonic_shifted_partial_sequence() {
  return Sequence({}, TailModel::closed_form(dsl::parse("harmonic(k + 1) - 1")), "harmonic_shifted_partial");
}

Sequence named_sequence(std::string_view name, std::span<const double> params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw InputError("sequence '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s)");
  };
  if (name == "unit") {
    need(1);
    const double k = params[0];
    if (std::nearbyint(k) != k) throw InputError("unit index must be an integer");
    return unit_sequence(static_cast<Index>(k));
  }
  if (name == "constant") {
    need(1);
    return constant_sequence(params[0]);
  }
  need(0);
  if (name == "zero") return zero_sequence();
  if (name == "alternating") return alternating_sequence();
  if (name == "reciprocal") return reciprocal_sequence();
  if (name == "harmonic_shifted_partial") return harmonic_shifted_partial_sequence();
  throw InputError("unknown sequence name '" + std::string(name) + "'");
}

Sequence truncate(const Sequence& x, Index n) {
  if (n < 1) throw IndexError("section length must be >= 1");
  if (static_cast<std::size_t>(n) > kMaxPrefix) throw IndexError("section length exceeds prefix cap");
  return Sequence(x.values(n), TailModel::zero(), x.label());
}

namespace {

std::optional<dsl::Expr> scaled_rule(double a, const Sequence& x) {
  if (a == 0.0 || x.tail().kind() != TailModel::Kind::ClosedForm) return std::nullopt;
  if (a == 1.0) return x.tail().rule();
  return dsl::Expr::number(a) * x.tail().rule();
}

}  // namespace

Sequence linear_combination(double a, const Sequence& x, double b, const Sequence& z) {
  Index size = std::max(x.prefix_size(), z.prefix_size());
  const bool unknown = x.tail_unknown() || z.tail_unknown();
  if (x.tail_unknown()) size = std::min(size, x.prefix_size());
  if (z.tail_unknown()) size = std::min(size, z.prefix_size());

  std::vector<double> p(static_cast<std::size_t>(size));
  for (Index k = 1; k <= size; ++k) p[static_cast<std::size_t>(k - 1)] = a * x.eval(k) + b * z.eval(k);
  if (unknown) return Sequence(std::move(p), TailModel::unknown());

  auto rx = scaled_rule(a, x);
  auto rz = scaled_rule(b, z);
  if (!rx && !rz) return Sequence(std::move(p), TailModel::zero());
  if (rx && rz) return Sequence(std::move(p), TailModel::closed_form(*rx + *rz));
  return Sequence(std::move(p), TailModel::closed_form(rx ? *rx : *rz));
}

ExponentPair ExponentPair::from_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("exponent p must satisfy 1 < p < infinity");
  return ExponentPair{p, conjugate(p)};
}

ExponentPair ExponentPair::checked(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q))
    throw InputError("exponents must satisfy 1 < p, q < infinity");
  if (std::fabs(1.0 / p + 1.0 / q - 1.0) > 1e-12) throw InputError("exponents are not conjugate: 1/p + 1/q != 1");
  return ExponentPair{p, q};
}

Horizon::Horizon(Index base_, int doublings_) : base(base_), doublings(doublings_) {
  if (base < 1) throw InputError("horizon base must be positive");
  if (doublings < 1 || doublings > 40) throw InputError("horizon doublings must be in [1, 40]");
  if (base > (kUnbounded >> (doublings + 2))) throw InputError("horizon too large");
}

std::vector<Index> Horizon::points() const {
  std::vector<Index> pts;
  pts.reserve(static_cast<std::size_t>(doublings) + 1);
  for (int d = 0; d <= doublings; ++d) pts.push_back(base << d);
  return pts;
}

}  // namespace hahnkit
