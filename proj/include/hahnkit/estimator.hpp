#pragma once

// Finite-horizon verdicts for asymptotic conditions.
//
// Every estimator evaluates a family at the horizon points N, 2N, ..., 2^d N
// and answers Holds, Fails or Inconclusive:
//   series : partial sums stall (relative change < stall_rel_tol at the last
//            doubling) with log-log slope < slope_hold -> Holds; slope >
//            slope_fail at every doubling -> Fails.
//   sup    : running maximum unchanged over the last doubling -> Holds;
//            growth slope > slope_fail at every doubling -> Fails.
//   limit  : oscillation (exists) or magnitude (zero) over each doubling
//            window decides convergence; see LimitGate.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hahnkit/seqcore.hpp"

namespace hahnkit {

struct EstimatorConfig {
  Index base_horizon = 256;
  int doublings = 2;
  double stall_rel_tol = 1e-6;
  double slope_hold = 0.01;
  double slope_fail = 0.1;
  /// Threshold for "lim x_k = 0" on the last doubling window.
  double zero_tol = 1e-6;
  /// Columns (or rows) checked for conditions quantified over every k (or n).
  Index column_budget = 64;

  Horizon horizon() const { return Horizon(base_horizon, doublings); }
};

enum class Status { Holds, Fails, Inconclusive };

const char* to_string(Status s);

struct Verdict {
  Status status = Status::Inconclusive;
  /// Estimate at the largest horizon evaluated.
  double value = 0.0;
  /// Holds: distance below the stall gate. Otherwise: fitted growth slope.
  double margin_or_trend = 0.0;
  /// Index (horizon, argmax, row, column) where divergence or the extremum is observed.
  std::optional<Index> witness;
  std::string note;

  bool holds() const noexcept { return status == Status::Holds; }
  bool fails() const noexcept { return status == Status::Fails; }
};

struct GrowthProfile {
  std::vector<Index> horizons;
  std::vector<double> values;
  double slope = 0.0;
};

/// Raised by norms and transforms that observe a Fails verdict.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, Verdict verdict) : Error(what), verdict_(std::move(verdict)) {}
  const Verdict& verdict() const noexcept { return verdict_; }

 private:
  Verdict verdict_;
};

/// Least-squares slope of log|value| against log(horizon); 0 for all-zero values.
double fitted_slope(std::span<const Index> horizons, std::span<const double> values);

/// Slope between two consecutive horizon points (log2 ratio for a doubling).
double step_slope(double from, double to, Index h_from, Index h_to);

/// Horizon points clipped to `available`; empty if fewer than two remain.
std::vector<Index> usable_points(const Horizon& h, Index available);

GrowthProfile partial_sum_profile(std::span<const double> terms, std::span<const Index> points);

/// terms[i] holds the term of index i+1. `complete` = false forces Inconclusive.
Verdict series_verdict(std::span<const double> terms, const Horizon& h, const EstimatorConfig& cfg = {},
                       bool complete = true);
Verdict series_verdict(const Sequence& terms, const Horizon& h, const EstimatorConfig& cfg = {});

/// Series rule applied to a ready-made profile (values at strictly doubling horizons).
Verdict judge_series_profile(const GrowthProfile& profile, const EstimatorConfig& cfg);
/// Sup rule applied to a profile of running maxima.
Verdict judge_sup_profile(const GrowthProfile& profile, const EstimatorConfig& cfg);

Verdict sup_verdict(std::span<const double> values, const Horizon& h, const EstimatorConfig& cfg = {},
                    bool complete = true);
Verdict sup_verdict(const std::function<double(Index)>& family, const Horizon& h,
                    const EstimatorConfig& cfg = {});

enum class LimitMode { Exists, Zero };
/// Strict: only the last-window tolerance counts. Trend: additionally accepts
/// windows shrinking by a log2 ratio <= -slope_fail at every doubling.
enum class LimitGate { Strict, Trend };

/// value = estimated limit (x at the largest horizon; 0 in Zero mode when Holds).
Verdict limit_verdict(std::span<const double> values, const Horizon& h, LimitMode mode, LimitGate gate,
                      const EstimatorConfig& cfg = {}, bool complete = true);

/// Holds iff all Holds, Fails iff any Fails, else Inconclusive. Value and
/// witness come from the first Fails, else the first entry.
Verdict conjoin(std::span<const Verdict> verdicts);
Verdict conjoin(std::initializer_list<Verdict> verdicts);

/// Downgrades Holds/Fails to Inconclusive (unknown-tail inputs).
Verdict force_inconclusive(Verdict v, const std::string& why);

}  // namespace hahnkit
