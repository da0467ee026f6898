#pragma once

#include <string>
#include <vector>

#include "hahnkit/estimator.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"

namespace hahnkit {

enum class ClassKind {
  H_L1, Lp_L1, H_C, Lp_C, H_Linf, Lp_Linf, H_C0, H_H,
  L1_H, C_H, C0_H, Linf_H,
  Hp_Linf, Hp_C, Hp_C0, Hp_L1,
  L1_Hp, C_Hp, C0_Hp, Linf_Hp,
};

inline constexpr ClassKind kAllClasses[] = {
    ClassKind::H_L1,    ClassKind::Lp_L1, ClassKind::H_C,   ClassKind::Lp_C,  ClassKind::H_Linf,
    ClassKind::Lp_Linf, ClassKind::H_C0,  ClassKind::H_H,   ClassKind::L1_H,  ClassKind::C_H,
    ClassKind::C0_H,    ClassKind::Linf_H, ClassKind::Hp_Linf, ClassKind::Hp_C, ClassKind::Hp_C0,
    ClassKind::Hp_L1,   ClassKind::L1_Hp, ClassKind::C_Hp,  ClassKind::C0_Hp, ClassKind::Linf_Hp,
};

/// Matrices mapping `source` into `target`.
struct ClassId {
  ClassKind kind = ClassKind::H_L1;
  SpaceId source;
  SpaceId target;
  ExponentPair pq{2.0, 2.0};
};

/// Throws InputError listing the supported pairs. `p` fills in the exponent
/// when neither space carries one greater than 1.
ClassId make_class(const SpaceId& source, const SpaceId& target, double p = 2.0);
/// Canonical ClassId for a kind with exponent p (used for lp and hp sides).
ClassId make_class(ClassKind kind, double p = 2.0);
std::string to_string(const ClassId& c);
std::vector<std::string> supported_classes();

enum class ConditionTag {
  ColumnAbsSeries,       // sum_n |a_nk| converges for every k
  HahnSup,               // sup_k (1/k) sum_n |sum_{v<=k} a_nv|
  RowSubsetSup,          // sup_K sum_k |sum_{n in K} a_nk|^q
  CesaroSup,             // sup_{n,k} (1/k) |sum_{v<=k} a_nv|
  ColumnLimitExists,     // lim_n a_nk exists for every k
  RowQSup,               // sup_n sum_k |a_nk|^q
  ColumnLimitZero,       // lim_n a_nk = 0 for every k
  WeightedDiffSeries,    // sum_n n |a_nk - a_{n+1,k}| converges for every k
  WeightedDiffSup,       // sup_k (1/k) sum_n n |sum_{v<=k} (a_nv - a_{n+1,v})|
  RowBetaDual,           // every row lies in the beta dual of hp
  BarCesaroQSup,         // sup_{n,k} ((1/k) |sum_{v<=k} abar_nv|)^q
  BarColumnLimitExists,  // lim_n abar_nk exists for every k
  BarColumnLimitZero,    // lim_n abar_nk = 0 for every k
  BarColumnQSeries,      // sum_n |abar_nk|^q converges for every k
  BarHahnQSup,           // sup_k k^{-q} sum_n |sum_{v<=k} abar_nv|^q
  TildeColumnAbsSup,     // sup_k sum_n |atilde_nk|
  TildeRowSubsetSup,     // sup_K sum_k |sum_{n in K} atilde_nk|
  TildeColumnSubsetSup,  // sup_K sum_n |sum_{k in K} atilde_nk|
};

inline constexpr ConditionTag kAllConditions[] = {
    ConditionTag::ColumnAbsSeries,     ConditionTag::HahnSup,           ConditionTag::RowSubsetSup,
    ConditionTag::CesaroSup,           ConditionTag::ColumnLimitExists, ConditionTag::RowQSup,
    ConditionTag::ColumnLimitZero,     ConditionTag::WeightedDiffSeries, ConditionTag::WeightedDiffSup,
    ConditionTag::RowBetaDual,         ConditionTag::BarCesaroQSup,     ConditionTag::BarColumnLimitExists,
    ConditionTag::BarColumnLimitZero,  ConditionTag::BarColumnQSeries,  ConditionTag::BarHahnQSup,
    ConditionTag::TildeColumnAbsSup,   ConditionTag::TildeRowSubsetSup, ConditionTag::TildeColumnSubsetSup,
};

const char* condition_id(ConditionTag t);
/// Human-readable statement of the condition.
const char* condition_formula(ConditionTag t);

/// Conditions evaluated for a class, in report order.
std::vector<ConditionTag> dispatch(ClassKind kind);

struct ConditionResult {
  ConditionTag tag;
  Verdict verdict;
};

struct ConditionReport {
  ClassId cls;
  std::vector<ConditionResult> conditions;
  Verdict overall;
  std::vector<std::string> notes;
  Horizon horizon;
  EstimatorConfig config;
};

// Single-column and single-family conditions. Conditions over every k are
// checked for k <= cfg.column_budget.

enum class ColumnMode { Plain, WeightedDiff };

/// Series over n of |a_nk|^q (Plain) or (n |a_nk - a_{n+1,k}|)^q (WeightedDiff).
Verdict cond_column_series(const InfMatrix& a, ColumnMode mode, Index k, const Horizon& horizon,
                           const EstimatorConfig& cfg = {}, double q_power = 1.0);
/// cond_column_series for every k within the budget; witness = first failing column.
Verdict cond_column_series_all(const InfMatrix& a, ColumnMode mode, const Horizon& horizon,
                               const EstimatorConfig& cfg = {}, double q_power = 1.0);

enum class PartialRowMode { Hahn, Cesaro, WeightedDiff };

/// Hahn: sup_k k^{-q} sum_n |P_nk|^q; Cesaro: sup_{n,k} (|P_nk| / k)^q;
/// WeightedDiff: sup_k k^{-q} sum_n (n |P_nk - P_{n+1,k}|)^q, with P_nk = sum_{v<=k} a_nv.
Verdict cond_partialrow_sup(const InfMatrix& a, PartialRowMode mode, double q_power, const Horizon& horizon,
                            const EstimatorConfig& cfg = {});

/// value = limit estimate alpha_k when Holds.
Verdict cond_column_limit(const InfMatrix& a, LimitMode mode, Index k, const Horizon& horizon,
                          const EstimatorConfig& cfg = {});
Verdict cond_column_limit_all(const InfMatrix& a, LimitMode mode, const Horizon& horizon,
                              const EstimatorConfig& cfg = {});

/// sup_n sum_k |a_nk|^q
Verdict cond_row_q_sup(const InfMatrix& a, double q, const Horizon& horizon, const EstimatorConfig& cfg = {});

enum class TildeVariant { ColumnAbsSup, SubsetSupRows, SubsetSupCols };

Verdict cond_tilde_tests(const InfMatrix& a, TildeVariant variant, double q, const Horizon& horizon,
                         const EstimatorConfig& cfg = {});

/// Every row n <= budget (or the row bound) in the beta dual of hp.
Verdict cond_row_beta_dual(const InfMatrix& a, const ExponentPair& pq, const Horizon& horizon,
                           const EstimatorConfig& cfg = {});

ConditionReport classify(const InfMatrix& a, const ClassId& cls, const Horizon& horizon = {},
                         const EstimatorConfig& cfg = {});

}  // namespace hahnkit
