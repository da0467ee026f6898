#pragma once

// Rule expressions for sequence tails and matrix entries.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)*
//   exponent:= ['+'|'-'] number | '(' ['+'|'-'] number ')'
//   primary := number | 'n' | 'k' | call | '(' expr ')'
//   call    := ('recip' | 'abs' | 'altsign' | 'harmonic') '(' expr ')'
//
// Number literals in a tree are never negative; a leading minus is always a
// Negate node, which keeps parse(print(e)) == e structurally.

#include <memory>
#include <string>
#include <string_view>

#include "hahnkit/error.hpp"

namespace hahnkit::dsl {

inline constexpr std::size_t kMaxRuleLength = 4096;

enum class Op : std::uint8_t {
  Number,
  VarN,
  VarK,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Recip,
  Abs,
  Altsign,
  Harmonic,
};

class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr number(double value);
  static Expr var_n();
  static Expr var_k();
  static Expr negate(Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr power(Expr base, double exponent);
  static Expr call(Op fn, Expr argument);

  Op op() const noexcept;
  /// Literal value for Number, exponent for Pow.
  double value() const noexcept;
  /// First operand (unary, call, power base, binary lhs).
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool uses_n() const noexcept;
  bool uses_k() const noexcept;

  /// Evaluates with deterministic left-to-right operand order.
  double eval(Index n, Index k) const;

  /// Replaces every occurrence of k by `replacement`.
  Expr substitute_k(const Expr& replacement) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr parse(std::string_view text);
std::string print(const Expr& e);

inline double eval_expr(const Expr& e, Index n, Index k) { return e.eval(n, k); }

/// Harmonic number H_m for m >= 0.
double harmonic_number(Index m);

}  // namespace hahnkit::dsl
