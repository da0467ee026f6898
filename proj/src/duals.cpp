#include "hahnkit/duals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hahnkit {

namespace {

constexpr Index kLadder[3] = {8, 12, 16};

// Row-major lines x cols block with one weight per column; `pos` is the
// original column index used for checkpoints, `line` the original row index.
struct Block {
  Index lines = 0;
  Index cols = 0;
  std::vector<double> c;
  std::vector<double> weight;
  std::vector<Index> pos;
  std::vector<Index> line;
};

struct Enumerated {
  std::vector<double> best;
  std::vector<std::uint64_t> mask;  // over original line indices (bit i = line i+1)
};

void check_finite(std::span<const double> c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i])) throw EvalError("non-finite matrix entry in subset enumeration");
  }
}

/// Removes zero lines and zero columns; neither changes any subset value.
Block compact(const Block& b) {
  Block out;
  std::vector<Index> keep_cols;
  for (Index k = 0; k < b.cols; ++k) {
    for (Index n = 0; n < b.lines; ++n) {
      if (b.c[static_cast<std::size_t>(n * b.cols + k)] != 0.0) {
        keep_cols.push_back(k);
        break;
      }
    }
  }
  out.cols = static_cast<Index>(keep_cols.size());
  for (Index k : keep_cols) {
    out.weight.push_back(b.weight[static_cast<std::size_t>(k)]);
    out.pos.push_back(b.pos[static_cast<std::size_t>(k)]);
  }
  for (Index n = 0; n < b.lines; ++n) {
    bool nonzero = false;
    for (Index k : keep_cols) nonzero = nonzero || b.c[static_cast<std::size_t>(n * b.cols + k)] != 0.0;
    if (!nonzero) continue;
    out.line.push_back(b.line[static_cast<std::size_t>(n)]);
    for (Index k : keep_cols) out.c.push_back(b.c[static_cast<std::size_t>(n * b.cols + k)]);
    ++out.lines;
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(const Block& b, double q, std::span<const Index> checkpoints)
      : b_(b), q_(q), cps_(checkpoints.begin(), checkpoints.end()) {
    res_.best.assign(cps_.size(), 0.0);
    res_.mask.assign(cps_.size(), 0);
    sums_.assign(static_cast<std::size_t>((b_.lines + 1) * b_.cols), 0.0);
    vals_.resize(cps_.size());
  }

  Enumerated run() {
    visit(0, 0);
    return res_;
  }

 private:
  void leaf(Index depth, std::uint64_t mask) {
    const double* s = sums_.data() + depth * b_.cols;
    double acc = 0.0;
    std::size_t j = 0;
    for (Index k = 0; k < b_.cols; ++k) {
      while (j < cps_.size() && b_.pos[static_cast<std::size_t>(k)] > cps_[j]) vals_[j++] = acc;
      acc += b_.weight[static_cast<std::size_t>(k)] * abs_pow(s[k], q_);
    }
    while (j < cps_.size()) vals_[j++] = acc;
    for (std::size_t i = 0; i < cps_.size(); ++i) {
      if (vals_[i] > res_.best[i] || (vals_[i] == res_.best[i] && mask < res_.mask[i])) {
        res_.best[i] = vals_[i];
        res_.mask[i] = mask;
      }
    }
  }

  // depth = number of accumulated (included) lines; row = next line to decide.
  void visit(Index row, Index depth, std::uint64_t mask = 0) {
    if (row == b_.lines) {
      leaf(depth, mask);
      return;
    }
    visit(row + 1, depth, mask);
    const double* src = sums_.data() + depth * b_.cols;
    double* dst = sums_.data() + (depth + 1) * b_.cols;
    const double* line = b_.c.data() + row * b_.cols;
    for (Index k = 0; k < b_.cols; ++k) dst[k] = src[k] + line[k];
    visit(row + 1, depth + 1, mask | (std::uint64_t{1} << (b_.line[static_cast<std::size_t>(row)] - 1)));
  }

  const Block& b_;
  double q_;
  std::vector<Index> cps_;
  std::vector<double> sums_;
  std::vector<double> vals_;
  Enumerated res_;
};

Enumerated enumerate(const Block& raw, double q, std::span<const Index> checkpoints) {
  const Block b = compact(raw);
  if (b.lines > 62) throw InputError("subset enumeration limited to 62 rows");
  return Enumerator(b, q, checkpoints).run();
}

Block plain_block(std::span<const double> c, Index rows, Index cols) {
  Block b;
  b.lines = rows;
  b.cols = cols;
  b.c.assign(c.begin(), c.end());
  b.weight.assign(static_cast<std::size_t>(cols), 1.0);
  for (Index k = 1; k <= cols; ++k) b.pos.push_back(k);
  for (Index n = 1; n <= rows; ++n) b.line.push_back(n);
  return b;
}

std::vector<Index> mask_to_subset(std::uint64_t mask) {
  std::vector<Index> s;
  for (Index i = 0; i < 64; ++i) {
    if (mask & (std::uint64_t{1} << i)) s.push_back(i + 1);
  }
  return s;
}

void check_shape(std::span<const double> c, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || c.size() != static_cast<std::size_t>(rows * cols))
    throw InputError("subset block needs rows*cols entries");
}

std::string subset_text(const std::vector<Index>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

/// v[r][j]: supremum using the first kLadder[r] lines at horizon point j.
Verdict judge_nested(const std::vector<std::vector<double>>& v, const std::vector<Index>& pts,
                     const EstimatorConfig& cfg) {
  GrowthProfile prof;
  prof.horizons = pts;
  prof.values = v[2];
  prof.slope = fitted_slope(prof.horizons, prof.values);
  const Verdict cols = judge_series_profile(prof, cfg);

  const double r8 = v[0].back();
  const double r12 = v[1].back();
  const double r16 = v[2].back();
  const double tol = cfg.stall_rel_tol * std::max(1.0, std::fabs(r16));
  const bool row_stall = std::fabs(r16 - r12) <= tol;
  const bool row_growth =
      step_slope(r8, r12, kLadder[0], kLadder[1]) > cfg.slope_fail && step_slope(r12, r16, kLadder[1], kLadder[2]) > cfg.slope_fail;

  Verdict out;
  out.value = r16;
  if (row_stall && cols.holds()) {
    out.status = Status::Holds;
    out.margin_or_trend = cols.margin_or_trend;
  } else if (row_growth) {
    out.status = Status::Fails;
    out.margin_or_trend = step_slope(r12, r16, kLadder[1], kLadder[2]);
    out.witness = kLadder[2];
    out.note = "supremum grows across nested row truncations";
  } else if (cols.fails()) {
    out.status = Status::Fails;
    out.margin_or_trend = cols.margin_or_trend;
    out.witness = pts.back();
    out.note = "supremum grows across horizon doublings";
  } else {
    out.margin_or_trend = cols.margin_or_trend;
    out.note = row_stall ? "column sums not yet stalled" : "row truncations not yet stalled";
  }
  return out;
}

}  // namespace

double subset_value(std::span<const double> c, Index rows, Index cols, double q, std::span<const Index> subset) {
  check_shape(c, rows, cols);
  std::vector<Index> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (Index k = 0; k < cols; ++k) {
    double s = 0.0;
    for (Index n : sorted) {
      if (n < 1 || n > rows) throw IndexError("subset row out of range");
      s += c[static_cast<std::size_t>((n - 1) * cols + k)];
    }
    acc += 1.0 * abs_pow(s, q);
  }
  return acc;
}

SubsetSup subset_sup_exact(std::span<const double> c, Index rows, Index cols, double q) {
  check_shape(c, rows, cols);
  check_finite(c);
  if (rows > kExactSubsetRows) throw InputError("exact subset enumeration is limited to 16 rows");
  const Index cp[1] = {cols};
  const Enumerated e = enumerate(plain_block(c, rows, cols), q, cp);
  return SubsetSup{e.best[0], mask_to_subset(e.mask[0]), true};
}

SubsetSup subset_sup_greedy(std::span<const double> c, Index rows, Index cols, double q) {
  check_shape(c, rows, cols);
  check_finite(c);
  auto value_of = [&](const std::vector<bool>& in) {
    std::vector<Index> s;
    for (Index n = 1; n <= rows; ++n) {
      if (in[static_cast<std::size_t>(n - 1)]) s.push_back(n);
    }
    return subset_value(c, rows, cols, q, s);
  };
  SubsetSup best{0.0, {}, false};
  for (bool start : {false, true}) {
    std::vector<bool> in(static_cast<std::size_t>(rows), start);
    double cur = value_of(in);
    for (int pass = 0; pass < 64; ++pass) {
      bool improved = false;
      for (Index n = 0; n < rows; ++n) {
        in[static_cast<std::size_t>(n)] = !in[static_cast<std::size_t>(n)];
        const double v = value_of(in);
        if (v > cur) {
          cur = v;
          improved = true;
        } else {
          in[static_cast<std::size_t>(n)] = !in[static_cast<std::size_t>(n)];
        }
      }
      if (!improved) break;
    }
    if (cur > best.value || (start == false && best.subset.empty() && cur == best.value)) {
      best.value = cur;
      best.subset.clear();
      for (Index n = 1; n <= rows; ++n) {
        if (in[static_cast<std::size_t>(n - 1)]) best.subset.push_back(n);
      }
    }
  }
  return best;
}

SubsetSup subset_sup(const InfMatrix& c, double q, Index rows, Index cols) {
  const std::vector<double> w = window(c, rows, cols);
  if (rows <= kExactSubsetRows) return subset_sup_exact(w, rows, cols, q);
  return subset_sup_greedy(w, rows, cols, q);
}

Verdict subset_sup_growth(const InfMatrix& c, double q, const Horizon& horizon, const EstimatorConfig& cfg,
                          bool transpose) {
  const Index lines = kLadder[2];
  const Index span = horizon.max();
  const std::vector<Index> pts = horizon.points();
  Block full;
  full.lines = lines;
  full.cols = span;
  full.c.assign(static_cast<std::size_t>(lines * span), 0.0);
  if (!transpose) {
    for (Index n = 1; n <= lines; ++n)
      c.row(n, std::span<double>(full.c).subspan(static_cast<std::size_t>((n - 1) * span), static_cast<std::size_t>(span)));
  } else {
    const std::vector<double> w = window(c, span, lines);
    for (Index n = 0; n < span; ++n) {
      for (Index k = 0; k < lines; ++k)
        full.c[static_cast<std::size_t>(k * span + n)] = w[static_cast<std::size_t>(n * lines + k)];
    }
  }
  check_finite(full.c);
  full.weight.assign(static_cast<std::size_t>(span), 1.0);
  for (Index k = 1; k <= span; ++k) full.pos.push_back(k);

  std::vector<std::vector<double>> v;
  std::vector<Index> best16;
  for (Index r : kLadder) {
    Block b = full;
    b.lines = r;
    b.c.resize(static_cast<std::size_t>(r * span));
    b.line.clear();
    for (Index n = 1; n <= r; ++n) b.line.push_back(n);
    const Enumerated e = enumerate(b, q, pts);
    v.push_back(e.best);
    if (r == lines) best16 = mask_to_subset(e.mask.back());
  }
  Verdict out = judge_nested(v, pts, cfg);
  const std::string which = transpose ? "columns" : "rows";
  out.note = out.note.empty() ? "maximising " + which + " " + subset_text(best16)
                              : out.note + "; maximising " + which + " " + subset_text(best16);
  return out;
}

Verdict in_alpha_dual(const Sequence& a, const SpaceId& target, const Horizon& horizon, const EstimatorConfig& cfg) {
  double q = 1.0;
  if (target.kind == SpaceKind::Hp && target.p > 1.0)
    q = ExponentPair::conjugate(target.p);
  else if (target.kind != SpaceKind::H && target.kind != SpaceKind::Hp)
    throw InputError("alpha dual is available for h and hp:p only");

  const Index lines = kLadder[2];
  if (a.evaluable_end() < lines) {
    Verdict v;
    v.note = "fewer than 16 evaluable terms";
    return v;
  }
  const std::vector<double> av = a.values(lines);
  const std::vector<Index> pts = horizon.points();

  // Columns k < R are explicit; columns k >= R see every row, so their sum
  // over a subset K is (sum_{n in K} a_n)/k and they fold into one column
  // weighted by sum_{k=R}^{H} k^{-q}.
  std::vector<std::vector<double>> v;
  for (Index r : kLadder) {
    std::vector<double> best(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Index h = pts[j];
      const Index explicit_cols = std::min(r - 1, h);
      double w = 0.0;
      for (Index k = h; k >= r; --k) w += abs_pow(1.0 / static_cast<double>(k), q);
      Block b;
      b.lines = r;
      b.cols = explicit_cols + 1;
      for (Index n = 1; n <= r; ++n) {
        b.line.push_back(n);
        const double an = av[static_cast<std::size_t>(n - 1)];
        for (Index k = 1; k <= explicit_cols; ++k) b.c.push_back(k >= n ? an / static_cast<double>(k) : 0.0);
        b.c.push_back(an);
      }
      b.weight.assign(static_cast<std::size_t>(explicit_cols), 1.0);
      b.weight.push_back(w);
      for (Index k = 1; k <= b.cols; ++k) b.pos.push_back(k);
      const Index cp[1] = {b.cols};
      best[j] = enumerate(b, q, cp).best[0];
    }
    v.push_back(std::move(best));
  }
  Verdict out = judge_nested(v, pts, cfg);
  if (a.tail_unknown()) out = force_inconclusive(std::move(out), "unknown tail");
  return out;
}

std::vector<double> beta_dual_family(const Sequence& a, double q, Index count) {
  const std::vector<double> av = a.values(count);
  std::vector<double> f(static_cast<std::size_t>(count));
  for (Index n = 1; n <= count; ++n) {
    // sum_{j=k}^{n} a_j accumulated right to left
    double tail = 0.0;
    double acc = 0.0;
    for (Index k = n; k >= 1; --k) {
      tail += av[static_cast<std::size_t>(k - 1)];
      acc += abs_pow(tail, q);
    }
    f[static_cast<std::size_t>(n - 1)] = acc / std::pow(static_cast<double>(n), q);
  }
  return f;
}

Verdict in_beta_dual_hp(const Sequence& a, const ExponentPair& pq, const Horizon& horizon, const EstimatorConfig& cfg) {
  const double q = pq.q;
  if (auto s = a.support_end(); s && *s <= horizon.max()) {
    // For n > S the inner sums no longer change, so F(n) = F(S) (S/n)^q decreases.
    Verdict v;
    v.status = Status::Holds;
    v.note = "finite support";
    v.witness = 1;
    if (*s == 0) return v;
    const std::vector<double> f = beta_dual_family(a, q, *s);
    auto it = std::max_element(f.begin(), f.end());
    v.value = *it;
    v.witness = static_cast<Index>(it - f.begin()) + 1;
    return v;
  }
  const Index count = std::min(horizon.max(), a.evaluable_end());
  return sup_verdict(beta_dual_family(a, q, count), horizon, cfg, !a.tail_unknown());
}

Verdict in_sigma_inf(const Sequence& a, const Horizon& horizon, const EstimatorConfig& cfg) {
  return member(a, SpaceId::sigma_inf(), horizon, cfg);
}

Verdict gamma_dual_hp(const Sequence& a, const ExponentPair& pq, const Horizon& horizon, const EstimatorConfig& cfg) {
  Verdict v = in_beta_dual_hp(a, pq, horizon, cfg);
  const std::string id = "gamma dual identified with the beta dual";
  v.note = v.note.empty() ? id : v.note + "; " + id;
  return v;
}

PairingReport pairing_partial_sums(const Sequence& a, const Sequence& x, const Horizon& horizon,
                                   const EstimatorConfig& cfg) {
  auto finite_end = [](const Sequence& s) { return s.support_end(); };
  const auto ea = finite_end(a);
  const auto ex = finite_end(x);
  Index count = std::min({horizon.max(), a.evaluable_end(), x.evaluable_end()});
  bool exact = false;
  if (ea || ex) {
    const Index s = std::min(ea.value_or(kUnbounded), ex.value_or(kUnbounded));
    if (s <= horizon.max()) {
      exact = true;
      count = horizon.max();
    }
  }
  std::vector<double> terms(static_cast<std::size_t>(count));
  const Index live = exact ? std::min(ea.value_or(kUnbounded), ex.value_or(kUnbounded)) : count;
  for (Index k = 1; k <= std::min(live, count); ++k)
    terms[static_cast<std::size_t>(k - 1)] = a.eval(k) * x.eval(k);
  PairingReport rep;
  const auto pts = usable_points(horizon, count);
  rep.profile = partial_sum_profile(terms, pts);
  if (exact) {
    rep.verdict.status = Status::Holds;
    rep.verdict.value = rep.profile.values.empty() ? 0.0 : rep.profile.values.back();
    rep.verdict.note = "finite support";
    return rep;
  }
  rep.verdict = series_verdict(terms, horizon, cfg, !(a.tail_unknown() || x.tail_unknown()));
  return rep;
}

}  // namespace hahnkit
