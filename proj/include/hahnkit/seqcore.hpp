#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hahnkit/dsl.hpp"
#include "hahnkit/error.hpp"

namespace hahnkit {

/// Largest prefix a Sequence may store; beyond it values come from the tail rule.
inline constexpr std::size_t kMaxPrefix = std::size_t{1} << 22;
inline constexpr Index kUnbounded = std::numeric_limits<Index>::max();

class TailModel {
 public:
  enum class Kind { Zero, ClosedForm, Unknown };

  static TailModel zero() { return TailModel(Kind::Zero, {}); }
  static TailModel unknown() { return TailModel(Kind::Unknown, {}); }
  /// `rule` must be an expression in k only.
  static TailModel closed_form(dsl::Expr rule);

  Kind kind() const noexcept { return kind_; }
  const dsl::Expr& rule() const noexcept { return rule_; }

 private:
  TailModel(Kind kind, dsl::Expr rule) : kind_(kind), rule_(std::move(rule)) {}
  Kind kind_;
  dsl::Expr rule_;
};

/// An immutable real sequence x_1, x_2, ... given by a finite prefix and a
/// tail model. Indices are 1-based; prefix()[0] holds x_1.
class Sequence {
 public:
  /// The zero sequence.
  Sequence();
  explicit Sequence(std::vector<double> prefix, TailModel tail = TailModel::zero(), std::string label = {});

  double eval(Index k) const;
  double operator()(Index k) const { return eval(k); }

  std::span<const double> prefix() const noexcept { return *prefix_; }
  Index prefix_size() const noexcept { return static_cast<Index>(prefix_->size()); }
  const TailModel& tail() const noexcept { return tail_; }
  const std::string& label() const noexcept { return label_; }
  Sequence with_label(std::string label) const;

  bool eventually_zero() const noexcept { return tail_.kind() == TailModel::Kind::Zero; }
  bool tail_unknown() const noexcept { return tail_.kind() == TailModel::Kind::Unknown; }

  /// Last index holding a non-zero value (0 for the zero sequence); only for Zero tails.
  std::optional<Index> support_end() const noexcept;

  /// Largest index that can be evaluated (prefix size for Unknown tails).
  Index evaluable_end() const noexcept;

  /// Values x_1..x_count.
  std::vector<double> values(Index count) const;

 private:
  std::shared_ptr<const std::vector<double>> prefix_;
  TailModel tail_;
  std::string label_;
  Index support_end_ = 0;
};

Sequence zero_sequence();
/// e^k: 1 in place k, 0 elsewhere.
Sequence unit_sequence(Index k);
Sequence constant_sequence(double c);
Sequence reciprocal_sequence();
/// (-1)^k
Sequence alternating_sequence();
/// b_k = sum_{i=1}^{k} 1/(i+1)
Sequence harmonic_shifted_partial_sequence();

/// Names: unit (params: k), zero, alternating, reciprocal,
/// harmonic_shifted_partial, constant (params: c).
Sequence named_sequence(std::string_view name, std::span<const double> params = {});

/// The n-section: x on 1..n, zero afterwards.
Sequence truncate(const Sequence& x, Index n);

/// a*x + b*z, keeping closed-form tails symbolic.
Sequence linear_combination(double a, const Sequence& x, double b, const Sequence& z);

/// Hoelder conjugate exponents with 1 < p < infinity.
struct ExponentPair {
  double p;
  double q;

  static ExponentPair from_p(double p);
  static ExponentPair from_q(double q) { return from_p(conjugate(q)); }
  /// Validates 1/p + 1/q = 1 within 1e-12.
  static ExponentPair checked(double p, double q);
  static double conjugate(double p) { return p / (p - 1.0); }
};

/// Evaluation points base, 2*base, ..., 2^doublings*base.
struct Horizon {
  Index base = 256;
  int doublings = 2;

  Horizon() = default;
  Horizon(Index base_, int doublings_);

  Index max() const noexcept { return base << doublings; }
  std::vector<Index> points() const;
};

}  // namespace hahnkit
