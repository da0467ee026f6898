#include "hahnkit/matclass.hpp"

#include <algorithm>
#include <cmath>

#include "hahnkit/duals.hpp"

namespace hahnkit {

// ---------------------------------------------------------------------------
// Classes

namespace {

enum class Cat { H, Hp, L1, Lp, Linf, C, C0, Other };

Cat category(const SpaceId& s) {
  switch (s.kind) {
    case SpaceKind::H: return Cat::H;
    case SpaceKind::Hp: return s.p > 1.0 ? Cat::Hp : Cat::H;
    case SpaceKind::Ellp: return s.p == 1.0 ? Cat::L1 : Cat::Lp;
    case SpaceKind::Ellinf: return Cat::Linf;
    case SpaceKind::C: return Cat::C;
    case SpaceKind::C0: return Cat::C0;
    default: return Cat::Other;
  }
}

struct ClassRow {
  ClassKind kind;
  Cat source;
  Cat target;
  const char* text;
};

constexpr ClassRow kClassTable[] = {
    {ClassKind::H_L1, Cat::H, Cat::L1, "h -> lp:1"},
    {ClassKind::Lp_L1, Cat::Lp, Cat::L1, "lp:p -> lp:1"},
    {ClassKind::H_C, Cat::H, Cat::C, "h -> c"},
    {ClassKind::Lp_C, Cat::Lp, Cat::C, "lp:p -> c"},
    {ClassKind::H_Linf, Cat::H, Cat::Linf, "h -> linf"},
    {ClassKind::Lp_Linf, Cat::Lp, Cat::Linf, "lp:p -> linf"},
    {ClassKind::H_C0, Cat::H, Cat::C0, "h -> c0"},
    {ClassKind::H_H, Cat::H, Cat::H, "h -> h"},
    {ClassKind::L1_H, Cat::L1, Cat::H, "lp:1 -> h"},
    {ClassKind::C_H, Cat::C, Cat::H, "c -> h"},
    {ClassKind::C0_H, Cat::C0, Cat::H, "c0 -> h"},
    {ClassKind::Linf_H, Cat::Linf, Cat::H, "linf -> h"},
    {ClassKind::Hp_Linf, Cat::Hp, Cat::Linf, "hp:p -> linf"},
    {ClassKind::Hp_C, Cat::Hp, Cat::C, "hp:p -> c"},
    {ClassKind::Hp_C0, Cat::Hp, Cat::C0, "hp:p -> c0"},
    {ClassKind::Hp_L1, Cat::Hp, Cat::L1, "hp:p -> lp:1"},
    {ClassKind::L1_Hp, Cat::L1, Cat::Hp, "lp:1 -> hp:p"},
    {ClassKind::C_Hp, Cat::C, Cat::Hp, "c -> hp:p"},
    {ClassKind::C0_Hp, Cat::C0, Cat::Hp, "c0 -> hp:p"},
    {ClassKind::Linf_Hp, Cat::Linf, Cat::Hp, "linf -> hp:p"},
};

const ClassRow& row_for(ClassKind k) {
  for (const auto& r : kClassTable) {
    if (r.kind == k) return r;
  }
  throw InputError("unknown class");
}

SpaceId space_for(Cat c, double p) {
  switch (c) {
    case Cat::H: return SpaceId::h();
    case Cat::Hp: return SpaceId::hp(p);
    case Cat::L1: return SpaceId::ellp(1.0);
    case Cat::Lp: return SpaceId::ellp(p);
    case Cat::Linf: return SpaceId::ellinf();
    case Cat::C: return SpaceId::c();
    case Cat::C0: return SpaceId::c0();
    case Cat::Other: break;
  }
  throw InputError("unsupported space in class");
}

}  // namespace

std::vector<std::string> supported_classes() {
  std::vector<std::string> out;
  for (const auto& r : kClassTable) out.emplace_back(r.text);
  return out;
}

ClassId make_class(ClassKind kind, double p) {
  const ClassRow& r = row_for(kind);
  return ClassId{kind, space_for(r.source, p), space_for(r.target, p), ExponentPair::from_p(p)};
}

ClassId make_class(const SpaceId& source, const SpaceId& target, double p) {
  const Cat s = category(source);
  const Cat t = category(target);
  for (const auto& r : kClassTable) {
    if (r.source != s || r.target != t) continue;
    double e = p;
    if (s == Cat::Lp || s == Cat::Hp)
      e = source.p;
    else if (t == Cat::Hp)
      e = target.p;
    return make_class(r.kind, e);
  }
  std::string list;
  for (const auto& r : kClassTable) list += std::string(list.empty() ? "" : ", ") + r.text;
  throw InputError("unsupported class " + to_string(source) + " -> " + to_string(target) + "; supported: " + list);
}

std::string to_string(const ClassId& c) { return to_string(c.source) + " -> " + to_string(c.target); }

const char* condition_id(ConditionTag t) {
  switch (t) {
    case ConditionTag::ColumnAbsSeries: return "column_abs_series";
    case ConditionTag::HahnSup: return "hahn_sup";
    case ConditionTag::RowSubsetSup: return "row_subset_sup";
    case ConditionTag::CesaroSup: return "cesaro_sup";
    case ConditionTag::ColumnLimitExists: return "column_limit_exists";
    case ConditionTag::RowQSup: return "row_q_sup";
    case ConditionTag::ColumnLimitZero: return "column_limit_zero";
    case ConditionTag::WeightedDiffSeries: return "weighted_diff_series";
    case ConditionTag::WeightedDiffSup: return "weighted_diff_sup";
    case ConditionTag::RowBetaDual: return "row_beta_dual";
    case ConditionTag::BarCesaroQSup: return "bar_cesaro_q_sup";
    case ConditionTag::BarColumnLimitExists: return "bar_column_limit_exists";
    case ConditionTag::BarColumnLimitZero: return "bar_column_limit_zero";
    case ConditionTag::BarColumnQSeries: return "bar_column_q_series";
    case ConditionTag::BarHahnQSup: return "bar_hahn_q_sup";
    case ConditionTag::TildeColumnAbsSup: return "tilde_column_abs_sup";
    case ConditionTag::TildeRowSubsetSup: return "tilde_row_subset_sup";
    case ConditionTag::TildeColumnSubsetSup: return "tilde_column_subset_sup";
  }
  return "?";
}

const char* condition_formula(ConditionTag t) {
  switch (t) {
    case ConditionTag::ColumnAbsSeries: return "sum_n |a_nk| converges for every k";
    case ConditionTag::HahnSup: return "sup_k (1/k) sum_n |sum_{v<=k} a_nv| < inf";
    case ConditionTag::RowSubsetSup: return "sup_K sum_k |sum_{n in K} a_nk|^q < inf";
    case ConditionTag::CesaroSup: return "sup_{n,k} (1/k) |sum_{v<=k} a_nv| < inf";
    case ConditionTag::ColumnLimitExists: return "lim_n a_nk exists for every k";
    case ConditionTag::RowQSup: return "sup_n sum_k |a_nk|^q < inf";
    case ConditionTag::ColumnLimitZero: return "lim_n a_nk = 0 for every k";
    case ConditionTag::WeightedDiffSeries: return "sum_n n |a_nk - a_{n+1,k}| converges for every k";
    case ConditionTag::WeightedDiffSup: return "sup_k (1/k) sum_n n |sum_{v<=k} (a_nv - a_{n+1,v})| < inf";
    case ConditionTag::RowBetaDual: return "(a_nk)_k in the beta dual of hp for every n";
    case ConditionTag::BarCesaroQSup: return "sup_{n,k} ((1/k) |sum_{v<=k} abar_nv|)^q < inf";
    case ConditionTag::BarColumnLimitExists: return "lim_n abar_nk = alpha_k exists for every k";
    case ConditionTag::BarColumnLimitZero: return "lim_n abar_nk = 0 for every k";
    case ConditionTag::BarColumnQSeries: return "sum_n |abar_nk|^q converges for every k";
    case ConditionTag::BarHahnQSup: return "sup_k k^-q sum_n |sum_{v<=k} abar_nv|^q < inf";
    case ConditionTag::TildeColumnAbsSup: return "sup_k sum_n |atilde_nk| < inf";
    case ConditionTag::TildeRowSubsetSup: return "sup_K sum_k |sum_{n in K} atilde_nk| < inf";
    case ConditionTag::TildeColumnSubsetSup: return "sup_K sum_n |sum_{k in K} atilde_nk| < inf";
  }
  return "?";
}

std::vector<ConditionTag> dispatch(ClassKind kind) {
  using T = ConditionTag;
  switch (kind) {
    case ClassKind::H_L1: return {T::ColumnAbsSeries, T::HahnSup};
    case ClassKind::Lp_L1: return {T::RowSubsetSup};
    case ClassKind::H_C: return {T::CesaroSup, T::ColumnLimitExists};
    case ClassKind::Lp_C: return {T::ColumnLimitExists, T::RowQSup};
    case ClassKind::H_Linf: return {T::CesaroSup};
    case ClassKind::Lp_Linf: return {T::RowQSup};
    case ClassKind::H_C0: return {T::CesaroSup, T::ColumnLimitZero};
    case ClassKind::H_H: return {T::ColumnLimitZero, T::WeightedDiffSeries, T::WeightedDiffSup};
    case ClassKind::L1_H: return {T::TildeColumnAbsSup};
    case ClassKind::C_H:
    case ClassKind::C0_H:
    case ClassKind::Linf_H: return {T::TildeColumnSubsetSup};
    case ClassKind::Hp_Linf: return {T::RowBetaDual, T::BarCesaroQSup};
    case ClassKind::Hp_C: return {T::RowBetaDual, T::BarCesaroQSup, T::BarColumnLimitExists};
    case ClassKind::Hp_C0: return {T::RowBetaDual, T::BarCesaroQSup, T::BarColumnLimitZero};
    case ClassKind::Hp_L1: return {T::RowBetaDual, T::BarColumnQSeries, T::BarHahnQSup};
    case ClassKind::L1_Hp: return {T::TildeRowSubsetSup};
    case ClassKind::C_Hp:
    case ClassKind::C0_Hp:
    case ClassKind::Linf_Hp: return {T::TildeColumnSubsetSup};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Conditions

namespace {

struct Panel {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> w;

  double at(Index n, Index k) const { return w[static_cast<std::size_t>((n - 1) * cols + (k - 1))]; }
};

Panel make_panel(const InfMatrix& a, Index rows, Index cols) {
  Panel p{rows, cols, window(a, rows, cols)};
  for (double v : p.w) {
    if (!std::isfinite(v)) throw EvalError("non-finite matrix entry");
  }
  return p;
}

/// Prefix sums over v: out(n, k) = sum_{v<=k} a_nv.
Panel row_prefix_sums(const Panel& p) {
  Panel out = p;
  for (Index n = 1; n <= p.rows; ++n) {
    double s = 0.0;
    for (Index k = 1; k <= p.cols; ++k) {
      s += p.at(n, k);
      out.w[static_cast<std::size_t>((n - 1) * p.cols + (k - 1))] = s;
    }
  }
  return out;
}

Index budget(const EstimatorConfig& cfg) {
  if (cfg.column_budget < 4) throw InputError("column_budget must be at least 4");
  return cfg.column_budget;
}

std::vector<Index> budget_ladder(Index b) { return {b / 4, b / 2, b}; }

std::string column_note(Index k) { return "column " + std::to_string(k); }

Verdict tag_column(Verdict v, Index k) {
  v.witness = k;
  v.note = v.note.empty() ? column_note(k) : column_note(k) + ": " + v.note;
  return v;
}

/// Fails at the first failing column; Holds when every column holds.
Verdict conjoin_columns(const std::vector<Verdict>& per_k) {
  for (std::size_t i = 0; i < per_k.size(); ++i) {
    if (per_k[i].fails()) return tag_column(per_k[i], static_cast<Index>(i) + 1);
  }
  Verdict out = conjoin(per_k);
  if (!out.holds()) {
    for (std::size_t i = 0; i < per_k.size(); ++i) {
      if (!per_k[i].holds()) return tag_column(out, static_cast<Index>(i) + 1);
    }
  }
  return out;
}

/// Supremum over k of per-column values, judged on the budget ladder.
Verdict column_sup_gate(const std::vector<double>& values, const EstimatorConfig& cfg) {
  const auto ladder = budget_ladder(static_cast<Index>(values.size()));
  GrowthProfile prof;
  double best = 0.0;
  Index arg = 1;
  Index k = 0;
  for (Index point : ladder) {
    for (; k < point; ++k) {
      if (values[static_cast<std::size_t>(k)] > best) {
        best = values[static_cast<std::size_t>(k)];
        arg = k + 1;
      }
    }
    prof.horizons.push_back(point);
    prof.values.push_back(best);
  }
  prof.slope = fitted_slope(prof.horizons, prof.values);
  Verdict v = judge_sup_profile(prof, cfg);
  v.witness = arg;
  if (v.fails()) v.note = "supremum over columns grows up to k = " + std::to_string(ladder.back());
  return v;
}

/// Per-column verdicts, then the sup gate over their values.
Verdict columns_with_sup(const std::vector<Verdict>& per_k, const std::vector<double>& values,
                         const EstimatorConfig& cfg) {
  const Verdict cols = conjoin_columns(per_k);
  if (cols.fails()) return cols;
  Verdict gate = column_sup_gate(values, cfg);
  if (gate.fails() || !cols.holds()) {
    Verdict out = gate.fails() ? gate : cols;
    if (!gate.fails()) out.value = gate.value;
    return out;
  }
  return gate;
}

std::vector<double> column_terms(const Panel& p, ColumnMode mode, Index k, Index count, double q) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (Index n = 1; n <= count; ++n) {
    const double v = mode == ColumnMode::Plain ? std::fabs(p.at(n, k))
                                               : static_cast<double>(n) * std::fabs(p.at(n, k) - p.at(n + 1, k));
    t[static_cast<std::size_t>(n - 1)] = abs_pow(v, q);
  }
  return t;
}

Verdict column_series_on(const Panel& p, ColumnMode mode, Index k, const Horizon& h, const EstimatorConfig& cfg,
                         double q) {
  return series_verdict(column_terms(p, mode, k, h.max(), q), h, cfg);
}

Verdict column_limit_on(const Panel& p, LimitMode mode, Index k, const Horizon& h, const EstimatorConfig& cfg) {
  std::vector<double> col(static_cast<std::size_t>(h.max()));
  for (Index n = 1; n <= h.max(); ++n) col[static_cast<std::size_t>(n - 1)] = p.at(n, k);
  return limit_verdict(col, h, mode, LimitGate::Trend, cfg);
}

Verdict partialrow_on(const Panel& a, PartialRowMode mode, double q, const Horizon& h, const EstimatorConfig& cfg) {
  const Panel cum = row_prefix_sums(a);
  const Index H = h.max();
  std::vector<Verdict> per_k;
  std::vector<double> values;
  for (Index k = 1; k <= a.cols; ++k) {
    std::vector<double> fam(static_cast<std::size_t>(H));
    const double kq = abs_pow(static_cast<double>(k), q);
    for (Index n = 1; n <= H; ++n) {
      double v = 0.0;
      switch (mode) {
        case PartialRowMode::Hahn: v = abs_pow(cum.at(n, k), q); break;
        case PartialRowMode::Cesaro: v = abs_pow(cum.at(n, k) / static_cast<double>(k), q); break;
        case PartialRowMode::WeightedDiff:
          v = abs_pow(static_cast<double>(n) * (cum.at(n, k) - cum.at(n + 1, k)), q);
          break;
      }
      fam[static_cast<std::size_t>(n - 1)] = v;
    }
    Verdict v = mode == PartialRowMode::Cesaro ? sup_verdict(fam, h, cfg) : series_verdict(fam, h, cfg);
    values.push_back(mode == PartialRowMode::Cesaro ? v.value : v.value / kq);
    per_k.push_back(std::move(v));
  }
  return columns_with_sup(per_k, values, cfg);
}

Verdict column_abs_sup_on(const Panel& p, const Horizon& h, const EstimatorConfig& cfg) {
  std::vector<Verdict> per_k;
  std::vector<double> values;
  for (Index k = 1; k <= p.cols; ++k) {
    per_k.push_back(column_series_on(p, ColumnMode::Plain, k, h, cfg, 1.0));
    values.push_back(per_k.back().value);
  }
  return columns_with_sup(per_k, values, cfg);
}

}  // namespace

Verdict cond_column_series(const InfMatrix& a, ColumnMode mode, Index k, const Horizon& horizon,
                           const EstimatorConfig& cfg, double q_power) {
  if (k < 1) throw IndexError("column index must be >= 1");
  const Panel p = make_panel(a, horizon.max() + 1, k);
  return column_series_on(p, mode, k, horizon, cfg, q_power);
}

Verdict cond_column_series_all(const InfMatrix& a, ColumnMode mode, const Horizon& horizon,
                               const EstimatorConfig& cfg, double q_power) {
  const Panel p = make_panel(a, horizon.max() + 1, budget(cfg));
  std::vector<Verdict> per_k;
  for (Index k = 1; k <= p.cols; ++k) per_k.push_back(column_series_on(p, mode, k, horizon, cfg, q_power));
  return conjoin_columns(per_k);
}

Verdict cond_partialrow_sup(const InfMatrix& a, PartialRowMode mode, double q_power, const Horizon& horizon,
                            const EstimatorConfig& cfg) {
  return partialrow_on(make_panel(a, horizon.max() + 1, budget(cfg)), mode, q_power, horizon, cfg);
}

Verdict cond_column_limit(const InfMatrix& a, LimitMode mode, Index k, const Horizon& horizon,
                          const EstimatorConfig& cfg) {
  if (k < 1) throw IndexError("column index must be >= 1");
  return column_limit_on(make_panel(a, horizon.max(), k), mode, k, horizon, cfg);
}

Verdict cond_column_limit_all(const InfMatrix& a, LimitMode mode, const Horizon& horizon,
                              const EstimatorConfig& cfg) {
  const Panel p = make_panel(a, horizon.max(), budget(cfg));
  std::vector<Verdict> per_k;
  for (Index k = 1; k <= p.cols; ++k) per_k.push_back(column_limit_on(p, mode, k, horizon, cfg));
  return conjoin_columns(per_k);
}

Verdict cond_row_q_sup(const InfMatrix& a, double q, const Horizon& horizon, const EstimatorConfig& cfg) {
  const Index H = horizon.max();
  const Index rows = a.row_bound() ? std::min(*a.row_bound(), H) : H;
  std::vector<double> sums(static_cast<std::size_t>(H), 0.0);
  bool complete = true;
  std::vector<double> buf;
  for (Index n = 1; n <= rows; ++n) {
    const RowSupport s = a.row_support(n);
    if (s.empty()) continue;
    const Index end = s.bounded() ? s.last : H;
    buf.assign(static_cast<std::size_t>(end), 0.0);
    a.row(n, buf);
    for (double& v : buf) v = abs_pow(v, q);
    double sum = 0.0;
    if (!s.bounded()) {
      Verdict v = series_verdict(buf, horizon, cfg);
      if (v.fails()) {
        v.witness = n;
        v.note = "row " + std::to_string(n) + " series diverges";
        return v;
      }
      complete = complete && v.holds();
    }
    for (double t : buf) sum += t;
    sums[static_cast<std::size_t>(n - 1)] = sum;
  }
  Verdict v = sup_verdict(sums, horizon, cfg);
  if (!complete) v = force_inconclusive(std::move(v), "some row series inconclusive");
  return v;
}

Verdict cond_tilde_tests(const InfMatrix& a, TildeVariant variant, double q, const Horizon& horizon,
                         const EstimatorConfig& cfg) {
  const InfMatrix t = tilde_transform(a);
  switch (variant) {
    case TildeVariant::ColumnAbsSup: return column_abs_sup_on(make_panel(t, horizon.max() + 1, budget(cfg)), horizon, cfg);
    case TildeVariant::SubsetSupRows: return subset_sup_growth(t, q, horizon, cfg, false);
    case TildeVariant::SubsetSupCols: return subset_sup_growth(t, q, horizon, cfg, true);
  }
  return Verdict{};
}

Verdict cond_row_beta_dual(const InfMatrix& a, const ExponentPair& pq, const Horizon& horizon,
                           const EstimatorConfig& cfg) {
  const Index rows = a.row_bound() ? std::min(*a.row_bound(), budget(cfg)) : budget(cfg);
  std::vector<Verdict> per_n;
  for (Index n = 1; n <= rows; ++n) {
    Verdict v = in_beta_dual_hp(a.row_sequence(n, horizon), pq, horizon, cfg);
    if (v.fails()) {
      v.witness = n;
      v.note = "row " + std::to_string(n) + (v.note.empty() ? "" : ": " + v.note);
      return v;
    }
    per_n.push_back(std::move(v));
  }
  Verdict out = conjoin(per_n);
  if (!out.holds()) {
    for (std::size_t i = 0; i < per_n.size(); ++i) {
      if (!per_n[i].holds()) {
        out.witness = static_cast<Index>(i) + 1;
        out.note = "row " + std::to_string(i + 1) + (per_n[i].note.empty() ? "" : ": " + per_n[i].note);
        break;
      }
    }
  } else if (!per_n.empty()) {
    auto it = std::max_element(per_n.begin(), per_n.end(),
                               [](const Verdict& x, const Verdict& y) { return x.value < y.value; });
    out.value = it->value;
    out.witness = static_cast<Index>(it - per_n.begin()) + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classifier

namespace {

Verdict evaluate(ConditionTag tag, const InfMatrix& a, const ClassId& cls, const Horizon& h,
                 const EstimatorConfig& cfg) {
  const double q = cls.pq.q;
  using T = ConditionTag;
  switch (tag) {
    case T::ColumnAbsSeries: return cond_column_series_all(a, ColumnMode::Plain, h, cfg);
    case T::HahnSup: return cond_partialrow_sup(a, PartialRowMode::Hahn, 1.0, h, cfg);
    case T::RowSubsetSup: return subset_sup_growth(a, q, h, cfg, false);
    case T::CesaroSup: return cond_partialrow_sup(a, PartialRowMode::Cesaro, 1.0, h, cfg);
    case T::ColumnLimitExists: return cond_column_limit_all(a, LimitMode::Exists, h, cfg);
    case T::RowQSup: return cond_row_q_sup(a, q, h, cfg);
    case T::ColumnLimitZero: return cond_column_limit_all(a, LimitMode::Zero, h, cfg);
    case T::WeightedDiffSeries: return cond_column_series_all(a, ColumnMode::WeightedDiff, h, cfg);
    case T::WeightedDiffSup: return cond_partialrow_sup(a, PartialRowMode::WeightedDiff, 1.0, h, cfg);
    case T::RowBetaDual: return cond_row_beta_dual(a, cls.pq, h, cfg);
    case T::BarCesaroQSup: return cond_partialrow_sup(bar_transform(a, h), PartialRowMode::Cesaro, q, h, cfg);
    case T::BarColumnLimitExists: return cond_column_limit_all(bar_transform(a, h), LimitMode::Exists, h, cfg);
    case T::BarColumnLimitZero: return cond_column_limit_all(bar_transform(a, h), LimitMode::Zero, h, cfg);
    case T::BarColumnQSeries: return cond_column_series_all(bar_transform(a, h), ColumnMode::Plain, h, cfg, q);
    case T::BarHahnQSup: return cond_partialrow_sup(bar_transform(a, h), PartialRowMode::Hahn, q, h, cfg);
    case T::TildeColumnAbsSup: return cond_tilde_tests(a, TildeVariant::ColumnAbsSup, 1.0, h, cfg);
    case T::TildeRowSubsetSup: return cond_tilde_tests(a, TildeVariant::SubsetSupRows, 1.0, h, cfg);
    case T::TildeColumnSubsetSup: return cond_tilde_tests(a, TildeVariant::SubsetSupCols, 1.0, h, cfg);
  }
  return Verdict{};
}

std::vector<std::string> class_notes(ClassKind k) {
  switch (k) {
    case ClassKind::Hp_Linf:
    case ClassKind::Hp_C:
    case ClassKind::Hp_C0:
      return {"bar_cesaro_q_sup is evaluated as a supremum over both n and k"};
    case ClassKind::L1_Hp: return {"source space l read as l1"};
    case ClassKind::Lp_C: return {"evaluated with exactly the column-limit and row q-sum conditions"};
    case ClassKind::C_H:
    case ClassKind::C0_H:
    case ClassKind::Linf_H:
    case ClassKind::C_Hp:
    case ClassKind::C0_Hp:
    case ClassKind::Linf_Hp: return {"c, c0 and linf sources share one characterization"};
    default: return {};
  }
}

}  // namespace

ConditionReport classify(const InfMatrix& a, const ClassId& cls, const Horizon& horizon, const EstimatorConfig& cfg) {
  ConditionReport rep;
  rep.cls = cls;
  rep.horizon = horizon;
  rep.config = cfg;
  rep.notes = class_notes(cls.kind);
  std::vector<Verdict> all;
  for (ConditionTag tag : dispatch(cls.kind)) {
    Verdict v;
    try {
      v = evaluate(tag, a, cls, horizon, cfg);
    } catch (const DivergenceError& e) {
      v = e.verdict();
      v.status = Status::Fails;
      v.note = e.what();
    }
    all.push_back(v);
    rep.conditions.push_back(ConditionResult{tag, std::move(v)});
  }
  rep.overall = conjoin(all);
  return rep;
}

}  // namespace hahnkit
