#include "hahnkit/dsl.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace hahnkit::dsl {

// A null node is the literal 0.
struct Expr::Node {
  Op op = Op::Number;
  double value = 0.0;
  Expr a;
  Expr b;
  bool has_n = false;
  bool has_k = false;
};

namespace {

bool is_call(Op op) {
  return op == Op::Recip || op == Op::Abs || op == Op::Altsign || op == Op::Harmonic;
}

const char* call_name(Op op) {
  switch (op) {
    case Op::Recip: return "recip";
    case Op::Abs: return "abs";
    case Op::Altsign: return "altsign";
    case Op::Harmonic: return "harmonic";
    default: return "?";
  }
}

double checked_integer(double v, const char* fn, Index n, Index k) {
  if (std::nearbyint(v) != v) throw EvalError(std::string(fn) + " needs an integer argument", n, k);
  return v;
}

double checked(double v, Index n, Index k) {
  if (!std::isfinite(v)) throw EvalError("non-finite rule value", n, k);
  return v;
}

}  // namespace

Expr::Expr() = default;

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::number(double value) {
  if (!std::isfinite(value)) throw InputError("rule literal must be finite");
  if (std::signbit(value) && value != 0.0) return negate(number(-value));
  if (value == 0.0) value = 0.0;  // drop -0
  return Expr(std::make_shared<const Node>(Node{Op::Number, value, {}, {}, false, false}));
}

Expr Expr::var_n() { return Expr(std::make_shared<const Node>(Node{Op::VarN, 0.0, {}, {}, true, false})); }

Expr Expr::var_k() { return Expr(std::make_shared<const Node>(Node{Op::VarK, 0.0, {}, {}, false, true})); }

Expr Expr::negate(Expr operand) {
  const bool hn = operand.uses_n();
  const bool hk = operand.uses_k();
  return Expr(std::make_shared<const Node>(Node{Op::Negate, 0.0, std::move(operand), {}, hn, hk}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (op != Op::Add && op != Op::Sub && op != Op::Mul && op != Op::Div)
    throw InputError("not a binary operator");
  const bool hn = lhs.uses_n() || rhs.uses_n();
  const bool hk = lhs.uses_k() || rhs.uses_k();
  return Expr(std::make_shared<const Node>(Node{op, 0.0, std::move(lhs), std::move(rhs), hn, hk}));
}

Expr Expr::power(Expr base, double exponent) {
  if (!std::isfinite(exponent)) throw InputError("exponent must be finite");
  const bool hn = base.uses_n();
  const bool hk = base.uses_k();
  return Expr(std::make_shared<const Node>(Node{Op::Pow, exponent, std::move(base), {}, hn, hk}));
}

Expr Expr::call(Op fn, Expr argument) {
  if (!is_call(fn)) throw InputError("not a function");
  const bool hn = argument.uses_n();
  const bool hk = argument.uses_k();
  return Expr(std::make_shared<const Node>(Node{fn, 0.0, std::move(argument), {}, hn, hk}));
}

Op Expr::op() const noexcept { return node_ ? node_->op : Op::Number; }
double Expr::value() const noexcept { return node_ ? node_->value : 0.0; }

const Expr& Expr::lhs() const {
  static const Expr zero;
  return node_ ? node_->a : zero;
}

const Expr& Expr::rhs() const {
  static const Expr zero;
  return node_ ? node_->b : zero;
}

bool Expr::uses_n() const noexcept { return node_ && node_->has_n; }
bool Expr::uses_k() const noexcept { return node_ && node_->has_k; }

double Expr::eval(Index n, Index k) const {
  if (!node_) return 0.0;
  const Node& nd = *node_;
  switch (nd.op) {
    case Op::Number: return nd.value;
    case Op::VarN: return static_cast<double>(n);
    case Op::VarK: return static_cast<double>(k);
    case Op::Negate: return -nd.a.eval(n, k);
    case Op::Add: {
      const double l = nd.a.eval(n, k);
      return checked(l + nd.b.eval(n, k), n, k);
    }
    case Op::Sub: {
      const double l = nd.a.eval(n, k);
      return checked(l - nd.b.eval(n, k), n, k);
    }
    case Op::Mul: {
      const double l = nd.a.eval(n, k);
      return checked(l * nd.b.eval(n, k), n, k);
    }
    case Op::Div: {
      const double l = nd.a.eval(n, k);
      const double r = nd.b.eval(n, k);
      if (r == 0.0) throw EvalError("division by zero", n, k);
      return checked(l / r, n, k);
    }
    case Op::Pow: return checked(std::pow(nd.a.eval(n, k), nd.value), n, k);
    case Op::Recip: {
      const double v = nd.a.eval(n, k);
      if (v == 0.0) throw EvalError("division by zero", n, k);
      return checked(1.0 / v, n, k);
    }
    case Op::Abs: return std::fabs(nd.a.eval(n, k));
    case Op::Altsign: {
      const double v = checked_integer(nd.a.eval(n, k), "altsign", n, k);
      return std::fmod(std::fabs(v), 2.0) == 0.0 ? 1.0 : -1.0;
    }
    case Op::Harmonic: {
      const double v = checked_integer(nd.a.eval(n, k), "harmonic", n, k);
      if (v < 0.0) throw EvalError("harmonic needs a non-negative argument", n, k);
      return harmonic_number(static_cast<Index>(v));
    }
  }
  return 0.0;
}

Expr Expr::substitute_k(const Expr& replacement) const {
  if (!uses_k()) return *this;
  const Node& nd = *node_;
  switch (nd.op) {
    case Op::VarK: return replacement;
    case Op::Negate: return negate(nd.a.substitute_k(replacement));
    case Op::Pow: return power(nd.a.substitute_k(replacement), nd.value);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return binary(nd.op, nd.a.substitute_k(replacement), nd.b.substitute_k(replacement));
    default: return call(nd.op, nd.a.substitute_k(replacement));
  }
}

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::Number: return x.value() == y.value();
    case Op::VarN:
    case Op::VarK: return true;
    case Op::Pow: return x.value() == y.value() && x.lhs() == y.lhs();
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    default: return x.lhs() == y.lhs();
  }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

double harmonic_number(Index m) {
  if (m < 0) throw EvalError("harmonic needs a non-negative argument");
  if (m <= 64) {
    double s = 0.0;
    for (Index i = 1; i <= m; ++i) s += 1.0 / static_cast<double>(i);
    return s;
  }
  const double x = static_cast<double>(m);
  const double inv2 = 1.0 / (x * x);
  const double series = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0)));
  return std::log(x) + std::numbers::egamma + 0.5 / x - series;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Op::Add, std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = Expr::binary(Op::Sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Op::Mul, std::move(lhs), parse_unary());
      else if (accept('/'))
        lhs = Expr::binary(Op::Div, std::move(lhs), parse_unary());
      else
        return lhs;
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    while (accept('^')) base = Expr::power(std::move(base), parse_exponent());
    return base;
  }

  double parse_exponent() {
    skip_ws();
    const bool paren = accept('(');
    skip_ws();
    double sign = 1.0;
    if (accept('-'))
      sign = -1.0;
    else
      accept('+');
    skip_ws();
    if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      fail("non-numeric exponent");
    const double v = sign * lex_number();
    if (paren) expect(')');
    return v;
  }

  double lex_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_ || pos_ == start) {
      pos_ = start;
      fail("malformed number");
    }
    if (!std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    return v;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(lex_number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "n") return Expr::var_n();
      if (id == "k") return Expr::var_k();
      Op fn;
      if (id == "recip")
        fn = Op::Recip;
      else if (id == "abs")
        fn = Op::Abs;
      else if (id == "altsign")
        fn = Op::Altsign;
      else if (id == "harmonic")
        fn = Op::Harmonic;
      else {
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'");
      }
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return Expr::call(fn, std::move(arg));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

// Precedence levels for printing.
int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Negate: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

void format_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void print_into(std::string& out, const Expr& e) {
  const Op op = e.op();
  switch (op) {
    case Op::Number: format_number(out, e.value()); return;
    case Op::VarN: out += 'n'; return;
    case Op::VarK: out += 'k'; return;
    case Op::Negate: {
      out += '-';
      const bool paren = precedence(e.lhs().op()) < 3;
      if (paren) out += '(';
      print_into(out, e.lhs());
      if (paren) out += ')';
      return;
    }
    case Op::Pow: {
      const bool paren = precedence(e.lhs().op()) < 5;
      if (paren) out += '(';
      print_into(out, e.lhs());
      if (paren) out += ')';
      out += '^';
      if (std::signbit(e.value()) && e.value() != 0.0) {
        out += "(-";
        format_number(out, -e.value());
        out += ')';
      } else {
        format_number(out, e.value() == 0.0 ? 0.0 : e.value());
      }
      return;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(op);
      const bool lp = precedence(e.lhs().op()) < p;
      const bool rp = precedence(e.rhs().op()) <= p;
      if (lp) out += '(';
      print_into(out, e.lhs());
      if (lp) out += ')';
      out += op == Op::Add ? " + " : op == Op::Sub ? " - " : op == Op::Mul ? "*" : "/";
      if (rp) out += '(';
      print_into(out, e.rhs());
      if (rp) out += ')';
      return;
    }
    default:
      out += call_name(op);
      out += '(';
      print_into(out, e.lhs());
      out += ')';
      return;
  }
}

}  // namespace

Expr parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rule", 0);
  if (text.size() > kMaxRuleLength) throw ParseError("rule longer than 4096 bytes", kMaxRuleLength);
  return Parser(text).parse_all();
}

std::string print(const Expr& e) {
  std::string out;
  print_into(out, e);
  return out;
}

}  // namespace hahnkit::dsl
