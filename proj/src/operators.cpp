#include "hahnkit/operators.hpp"

#include <algorithm>
#include <cmath>

namespace hahnkit {

// ---------------------------------------------------------------------------
// Sequence operators

namespace {

using Kind = TailModel::Kind;

dsl::Expr shifted(const dsl::Expr& rule) { return rule.substitute_k(dsl::Expr::var_k() + dsl::Expr::number(1)); }

/// Prefix length for operators reading x_{k+1}.
Index forward_prefix(const Sequence& x) {
  return x.tail_unknown() ? std::max<Index>(x.prefix_size() - 1, 0) : x.prefix_size();
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

Sequence delta(const Sequence& x) {
  const Index n = forward_prefix(x);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) p[static_cast<std::size_t>(k - 1)] = x.eval(k) - x.eval(k + 1);
  switch (x.tail().kind()) {
    case Kind::Zero: return Sequence(std::move(p), TailModel::zero());
    case Kind::Unknown: return Sequence(std::move(p), TailModel::unknown());
    case Kind::ClosedForm: break;
  }
  const dsl::Expr& r = x.tail().rule();
  return Sequence(std::move(p), TailModel::closed_form(r - shifted(r)));
}

Sequence m_transform(const Sequence& x) {
  const Index n = forward_prefix(x);
  std::vector<double> p(static_cast<std::size_t>(n));
  // Same arithmetic as a row of Named(M), so the two agree bit for bit.
  for (Index k = 1; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    p[static_cast<std::size_t>(k - 1)] = kk * x.eval(k) - kk * x.eval(k + 1);
  }
  switch (x.tail().kind()) {
    case Kind::Zero: return Sequence(std::move(p), TailModel::zero());
    case Kind::Unknown: return Sequence(std::move(p), TailModel::unknown());
    case Kind::ClosedForm: break;
  }
  const dsl::Expr& r = x.tail().rule();
  return Sequence(std::move(p), TailModel::closed_form(dsl::Expr::var_k() * r - dsl::Expr::var_k() * shifted(r)));
}

Sequence m_inverse(const Sequence& y, const Horizon& horizon) {
  Index end = 0;
  if (auto s = y.support_end())
    end = *s;
  else
    end = std::min(horizon.max(), y.evaluable_end());
  if (static_cast<std::size_t>(end) > kMaxPrefix) throw IndexError("m_inverse horizon exceeds prefix cap");
  std::vector<double> x(static_cast<std::size_t>(end));
  CompensatedSum acc;
  for (Index j = end; j >= 1; --j) {
    acc.add(y.eval(j) / static_cast<double>(j));
    x[static_cast<std::size_t>(j - 1)] = acc.value();
  }
  if (y.eventually_zero()) return Sequence(std::move(x), TailModel::zero());
  return Sequence(std::move(x), TailModel::unknown(), "horizon-limited");
}

Sequence index_scale(const Sequence& x) {
  const Index n = x.prefix_size();
  std::vector<double> p(static_cast<std::size_t>(n));
  for (Index k = 1; k <= n; ++k) p[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * x.eval(k);
  switch (x.tail().kind()) {
    case Kind::Zero: return Sequence(std::move(p), TailModel::zero());
    case Kind::Unknown: return Sequence(std::move(p), TailModel::unknown());
    case Kind::ClosedForm: break;
  }
  return Sequence(std::move(p), TailModel::closed_form(dsl::Expr::var_k() * x.tail().rule()));
}

// ---------------------------------------------------------------------------
// InfMatrix

struct InfMatrix::Impl {
  MatrixKind kind = MatrixKind::Named;
  std::string label;
  NamedMatrix named = NamedMatrix::Zero;
  std::vector<Index> offsets;
  std::vector<dsl::Expr> rules;
  Index rows = 0;
  Index cols = 0;
  std::vector<double> entries;
  Sequence seq;
  std::shared_ptr<const Impl> source;
  Horizon horizon;
};

namespace {

using Impl = InfMatrix::Impl;

double entry_of(const Impl& m, Index n, Index k);
void row_of(const Impl& m, Index n, std::span<double> out);
RowSupport support_of(const Impl& m, Index n);

RowSupport empty_support() { return RowSupport{1, 0}; }

std::optional<Index> row_bound_of(const Impl& m) {
  switch (m.kind) {
    case MatrixKind::Named: return m.named == NamedMatrix::Zero ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::Banded: return m.offsets.empty() ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::DenseBlock: return m.rows;
    case MatrixKind::DMatrix: return m.seq.support_end();
    case MatrixKind::BMatrix: return m.seq.support_end() == Index{0} ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::Bar:
    case MatrixKind::Tilde: return row_bound_of(*m.source);
  }
  return std::nullopt;
}

std::optional<Index> col_bound_of(const Impl& m) {
  switch (m.kind) {
    case MatrixKind::Named: return m.named == NamedMatrix::Zero ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::Banded: return m.offsets.empty() ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::DenseBlock: return m.rows == 0 ? 0 : m.cols;
    case MatrixKind::DMatrix:
    case MatrixKind::BMatrix: return m.seq.support_end() == Index{0} ? std::optional<Index>(0) : std::nullopt;
    case MatrixKind::Bar:
    case MatrixKind::Tilde: return col_bound_of(*m.source);
  }
  return std::nullopt;
}

bool row_beyond_bound(const Impl& m, Index n) {
  const auto rb = row_bound_of(m);
  return rb && n > *rb;
}

RowSupport support_of(const Impl& m, Index n) {
  switch (m.kind) {
    case MatrixKind::Named:
      switch (m.named) {
        case NamedMatrix::Identity: return RowSupport{n, n};
        case NamedMatrix::Zero: return empty_support();
        case NamedMatrix::M: return RowSupport{n, n + 1};
        case NamedMatrix::Ones: return RowSupport{1, kUnbounded};
      }
      break;
    case MatrixKind::Banded: {
      if (m.offsets.empty()) return empty_support();
      const auto [lo, hi] = std::minmax_element(m.offsets.begin(), m.offsets.end());
      return RowSupport{std::max<Index>(1, n + *lo), n + *hi};
    }
    case MatrixKind::DenseBlock:
      return n <= m.rows && m.cols > 0 ? RowSupport{1, m.cols} : empty_support();
    case MatrixKind::DMatrix:
      if (row_beyond_bound(m, n) || m.seq.eval(n) == 0.0) return empty_support();
      return RowSupport{n, kUnbounded};
    case MatrixKind::BMatrix:
      if (row_beyond_bound(m, n)) return empty_support();
      return RowSupport{n, kUnbounded};
    case MatrixKind::Tilde: {
      const RowSupport a = support_of(*m.source, n);
      const RowSupport b = support_of(*m.source, n + 1);
      if (a.empty()) return b;
      if (b.empty()) return a;
      return RowSupport{std::min(a.first, b.first), std::max(a.last, b.last)};
    }
    case MatrixKind::Bar: {
      const RowSupport s = support_of(*m.source, n);
      if (s.empty()) return s;
      return RowSupport{1, s.last};
    }
  }
  return empty_support();
}

/// Terms a_nj / j of a bar row and its last column; checks divergence for
/// rows with unbounded support.
std::vector<double> bar_terms(const Impl& m, Index n) {
  const RowSupport s = support_of(*m.source, n);
  if (s.empty()) return {};
  const Index end = s.bounded() ? s.last : m.horizon.max();
  std::vector<double> t(static_cast<std::size_t>(end));
  row_of(*m.source, n, t);
  for (Index j = 1; j <= end; ++j) t[static_cast<std::size_t>(j - 1)] /= static_cast<double>(j);
  if (!s.bounded()) {
    const Verdict v = series_verdict(t, m.horizon);
    if (v.fails())
      throw DivergenceError("bar transform: divergent row tail at (n=" + std::to_string(n) + ", k=1)", v);
  }
  return t;
}

double entry_of(const Impl& m, Index n, Index k) {
  if (n < 1 || k < 1) throw IndexError("matrix indices must be >= 1");
  switch (m.kind) {
    case MatrixKind::Named:
      switch (m.named) {
        case NamedMatrix::Identity: return n == k ? 1.0 : 0.0;
        case NamedMatrix::Zero: return 0.0;
        case NamedMatrix::M:
          if (k == n) return static_cast<double>(n);
          if (k == n + 1) return -static_cast<double>(n);
          return 0.0;
        case NamedMatrix::Ones: return 1.0;
      }
      break;
    case MatrixKind::Banded:
      for (std::size_t i = 0; i < m.offsets.size(); ++i) {
        if (k - n == m.offsets[i]) return m.rules[i].eval(n, k);
      }
      return 0.0;
    case MatrixKind::DenseBlock:
      if (n > m.rows || k > m.cols) return 0.0;
      return m.entries[static_cast<std::size_t>((n - 1) * m.cols + (k - 1))];
    case MatrixKind::DMatrix: return k >= n ? m.seq.eval(n) / static_cast<double>(k) : 0.0;
    case MatrixKind::BMatrix: {
      if (n > k) return 0.0;
      double s = 0.0;
      for (Index j = 1; j <= k; ++j) s += m.seq.eval(j);
      return s / static_cast<double>(k);
    }
    case MatrixKind::Tilde:
      return static_cast<double>(n) * (entry_of(*m.source, n, k) - entry_of(*m.source, n + 1, k));
    case MatrixKind::Bar: {
      const RowSupport sup = support_of(*m.source, n);
      if (sup.empty()) return 0.0;
      if (sup.bounded()) {
        if (k > sup.last) return 0.0;
        double s = 0.0;
        for (Index j = sup.last; j >= std::max(k, sup.first); --j)
          s += entry_of(*m.source, n, j) / static_cast<double>(j);
        return s;
      }
      const auto t = bar_terms(m, n);
      double s = 0.0;
      for (Index j = static_cast<Index>(t.size()); j >= k; --j) s += t[static_cast<std::size_t>(j - 1)];
      return s;
    }
  }
  return 0.0;
}

void row_of(const Impl& m, Index n, std::span<double> out) {
  const Index kmax = static_cast<Index>(out.size());
  std::fill(out.begin(), out.end(), 0.0);
  auto put = [&](Index k, double v) {
    if (k >= 1 && k <= kmax) out[static_cast<std::size_t>(k - 1)] = v;
  };
  switch (m.kind) {
    case MatrixKind::Named:
      switch (m.named) {
        case NamedMatrix::Identity: put(n, 1.0); return;
        case NamedMatrix::Zero: return;
        case NamedMatrix::M:
          put(n, static_cast<double>(n));
          put(n + 1, -static_cast<double>(n));
          return;
        case NamedMatrix::Ones: std::fill(out.begin(), out.end(), 1.0); return;
      }
      return;
    case MatrixKind::Banded:
      for (std::size_t i = 0; i < m.offsets.size(); ++i) {
        const Index k = n + m.offsets[i];
        if (k >= 1 && k <= kmax) put(k, m.rules[i].eval(n, k));
      }
      return;
    case MatrixKind::DenseBlock: {
      if (n > m.rows) return;
      const Index c = std::min(kmax, m.cols);
      const auto first = m.entries.begin() + static_cast<std::ptrdiff_t>((n - 1) * m.cols);
      std::copy(first, first + static_cast<std::ptrdiff_t>(c), out.begin());
      return;
    }
    case MatrixKind::DMatrix: {
      if (n > kmax) return;
      const double a = m.seq.eval(n);
      for (Index k = n; k <= kmax; ++k) put(k, a / static_cast<double>(k));
      return;
    }
    case MatrixKind::BMatrix: {
      double s = 0.0;
      for (Index k = 1; k <= kmax; ++k) {
        s += m.seq.eval(k);
        if (n <= k) put(k, s / static_cast<double>(k));
      }
      return;
    }
    case MatrixKind::Tilde: {
      std::vector<double> next(out.size());
      row_of(*m.source, n, out);
      row_of(*m.source, n + 1, next);
      const double scale = static_cast<double>(n);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * (out[i] - next[i]);
      return;
    }
    case MatrixKind::Bar: {
      const auto t = bar_terms(m, n);
      double s = 0.0;
      for (Index j = static_cast<Index>(t.size()); j >= 1; --j) {
        s += t[static_cast<std::size_t>(j - 1)];
        put(j, s);
      }
      return;
    }
  }
}

}  // namespace

const char* to_string(NamedMatrix id) {
  switch (id) {
    case NamedMatrix::Identity: return "identity";
    case NamedMatrix::Zero: return "zero";
    case NamedMatrix::M: return "M";
    case NamedMatrix::Ones: return "ones";
  }
  return "zero";
}

NamedMatrix parse_named_matrix(std::string_view name) {
  if (name == "identity") return NamedMatrix::Identity;
  if (name == "zero") return NamedMatrix::Zero;
  if (name == "M") return NamedMatrix::M;
  if (name == "ones") return NamedMatrix::Ones;
  throw InputError("unknown named matrix '" + std::string(name) + "' (identity, zero, M, ones)");
}

InfMatrix::InfMatrix() : InfMatrix(named(NamedMatrix::Zero)) {}

InfMatrix::InfMatrix(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

InfMatrix InfMatrix::named(NamedMatrix id, std::string label) {
  auto m = std::make_shared<Impl>();
  m->kind = MatrixKind::Named;
  m->named = id;
  m->label = label.empty() ? to_string(id) : std::move(label);
  return InfMatrix(std::move(m));
}

InfMatrix InfMatrix::banded(std::vector<Index> offsets, std::vector<dsl::Expr> rules, std::string label) {
  if (offsets.size() != rules.size()) throw InputError("banded matrix needs one rule per offset");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    for (std::size_t j = i + 1; j < offsets.size(); ++j) {
      if (offsets[i] == offsets[j]) throw InputError("banded matrix has a repeated offset");
    }
  }
  auto m = std::make_shared<Impl>();
  m->kind = MatrixKind::Banded;
  m->offsets = std::move(offsets);
  m->rules = std::move(rules);
  m->label = std::move(label);
  return InfMatrix(std::move(m));
}

InfMatrix InfMatrix::dense_block(Index rows, Index cols, std::vector<double> entries, std::string label) {
  if (rows < 0 || cols < 0) throw InputError("dense block dimensions must be non-negative");
  if (entries.size() != static_cast<std::size_t>(rows * cols))
    throw InputError("dense block needs rows*cols entries");
  for (double v : entries) {
    if (!std::isfinite(v)) throw InputError("dense block entries must be finite");
  }
  auto m = std::make_shared<Impl>();
  m->kind = MatrixKind::DenseBlock;
  m->rows = rows;
  m->cols = cols;
  m->entries = std::move(entries);
  m->label = std::move(label);
  return InfMatrix(std::move(m));
}

InfMatrix InfMatrix::d_matrix(Sequence a, std::string label) {
  auto m = std::make_shared<Impl>();
  m->kind = MatrixKind::DMatrix;
  m->seq = std::move(a);
  m->label = std::move(label);
  return InfMatrix(std::move(m));
}

InfMatrix InfMatrix::b_matrix(Sequence a, std::string label) {
  auto m = std::make_shared<Impl>();
  m->kind = MatrixKind::BMatrix;
  m->seq = std::move(a);
  m->label = std::move(label);
  return InfMatrix(std::move(m));
}

MatrixKind InfMatrix::kind() const noexcept { return impl_->kind; }
const std::string& InfMatrix::label() const noexcept { return impl_->label; }
double InfMatrix::entry(Index n, Index k) const { return entry_of(*impl_, n, k); }

void InfMatrix::row(Index n, std::span<double> out) const {
  if (n < 1) throw IndexError("matrix row index must be >= 1");
  row_of(*impl_, n, out);
}

RowSupport InfMatrix::row_support(Index n) const { return support_of(*impl_, n); }
std::optional<Index> InfMatrix::row_bound() const { return row_bound_of(*impl_); }
std::optional<Index> InfMatrix::col_bound() const { return col_bound_of(*impl_); }

Sequence InfMatrix::row_sequence(Index n, const Horizon& horizon) const {
  const RowSupport s = row_support(n);
  if (s.empty()) return zero_sequence();
  if (s.bounded()) {
    std::vector<double> p(static_cast<std::size_t>(s.last));
    row(n, p);
    return Sequence(std::move(p), TailModel::zero());
  }
  if (impl_->kind == MatrixKind::Named && impl_->named == NamedMatrix::Ones) return constant_sequence(1.0);
  if (impl_->kind == MatrixKind::DMatrix) {
    const double a = impl_->seq.eval(n);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    p.back() = a / static_cast<double>(n);
    return Sequence(std::move(p), TailModel::closed_form(dsl::Expr::number(a) / dsl::Expr::var_k()));
  }
  std::vector<double> p(static_cast<std::size_t>(horizon.max()));
  row(n, p);
  return Sequence(std::move(p), TailModel::unknown(), "horizon-limited row");
}

NamedMatrix InfMatrix::named_id() const { return impl_->named; }
const std::vector<Index>& InfMatrix::band_offsets() const { return impl_->offsets; }
const std::vector<dsl::Expr>& InfMatrix::band_rules() const { return impl_->rules; }
Index InfMatrix::block_rows() const { return impl_->rows; }
Index InfMatrix::block_cols() const { return impl_->cols; }
std::span<const double> InfMatrix::block_entries() const { return impl_->entries; }
const Sequence& InfMatrix::generator() const { return impl_->seq; }

std::vector<double> window(const InfMatrix& a, Index rows, Index cols) {
  std::vector<double> w(static_cast<std::size_t>(rows * cols), 0.0);
  const Index live = a.row_bound() ? std::min(rows, *a.row_bound()) : rows;
  for (Index n = 1; n <= live; ++n) {
    a.row(n, std::span<double>(w).subspan(static_cast<std::size_t>((n - 1) * cols), static_cast<std::size_t>(cols)));
  }
  return w;
}

Sequence mat_apply(const InfMatrix& a, const Sequence& x, const Horizon& horizon, const EstimatorConfig& cfg) {
  const bool bounded_rows = a.row_bound().has_value();
  const Index rows = bounded_rows ? *a.row_bound() : horizon.max();
  if (static_cast<std::size_t>(rows) > kMaxPrefix) throw IndexError("mat_apply row count exceeds prefix cap");
  const Index x_end = x.support_end() ? *x.support_end() : x.evaluable_end();

  std::vector<double> xs;
  auto x_at = [&](Index k) {
    while (static_cast<Index>(xs.size()) < k) xs.push_back(x.eval(static_cast<Index>(xs.size()) + 1));
    return xs[static_cast<std::size_t>(k - 1)];
  };

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows));
  bool truncated = false;
  std::vector<double> buf;
  for (Index n = 1; n <= rows; ++n) {
    const RowSupport s = a.row_support(n);
    const Index lo = s.first;
    Index hi = std::min(s.last, x_end);
    if (lo > hi) {
      out.push_back(0.0);
      continue;
    }
    const bool exact = hi != kUnbounded;
    if (!exact) hi = horizon.max();
    if (x.tail_unknown() && hi > x.prefix_size()) {
      truncated = true;
      break;
    }
    buf.assign(static_cast<std::size_t>(hi), 0.0);
    a.row(n, buf);
    if (exact) {
      double sum = 0.0;
      for (Index k = lo; k <= hi; ++k) sum += buf[static_cast<std::size_t>(k - 1)] * x_at(k);
      out.push_back(sum);
      continue;
    }
    for (Index k = 1; k <= hi; ++k) buf[static_cast<std::size_t>(k - 1)] *= x_at(k);
    const Verdict v = series_verdict(buf, horizon, cfg);
    if (v.fails()) throw DivergenceError("mat_apply: row " + std::to_string(n) + " series diverges", v);
    double sum = 0.0;
    for (double t : buf) sum += t;
    out.push_back(sum);
  }
  if (bounded_rows && !truncated) return Sequence(std::move(out), TailModel::zero());
  return Sequence(std::move(out), TailModel::unknown(), "horizon-limited");
}

InfMatrix bar_transform(const InfMatrix& a, const Horizon& horizon) {
  auto m = std::make_shared<InfMatrix::Impl>();
  m->kind = MatrixKind::Bar;
  m->source = a.impl_;
  m->horizon = horizon;
  m->label = "bar(" + a.label() + ")";
  return InfMatrix(std::move(m));
}

InfMatrix tilde_transform(const InfMatrix& a) {
  auto m = std::make_shared<InfMatrix::Impl>();
  m->kind = MatrixKind::Tilde;
  m->source = a.impl_;
  m->label = "tilde(" + a.label() + ")";
  return InfMatrix(std::move(m));
}

TriangleTag check_triangle(const InfMatrix& a, Index up_to) {
  TriangleTag tag{true, up_to};
  for (Index n = 1; n <= up_to; ++n) {
    const RowSupport s = a.row_support(n);
    if (s.empty() || a.entry(n, n) == 0.0) return TriangleTag{false, up_to};
    if (s.last > n) {
      std::vector<double> r(static_cast<std::size_t>(std::min(s.last, up_to + 1)));
      a.row(n, r);
      for (Index k = n + 1; k <= static_cast<Index>(r.size()); ++k) {
        if (r[static_cast<std::size_t>(k - 1)] != 0.0) return TriangleTag{false, up_to};
      }
      if (!s.bounded() || s.last > up_to + 1) {
        // Support extends past the checked window; entries there are unverified.
      }
    }
  }
  return tag;
}

}  // namespace hahnkit
