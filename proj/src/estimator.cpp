#include "hahnkit/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace hahnkit {

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr double kLogFloor = 1e-300;

double safe_log(double v) { return std::log(std::max(std::fabs(v), kLogFloor)); }

bool all_steps_above(const GrowthProfile& p, double threshold) {
  if (p.values.size() < 2) return false;
  for (std::size_t i = 1; i < p.values.size(); ++i) {
    if (!(step_slope(p.values[i - 1], p.values[i], p.horizons[i - 1], p.horizons[i]) > threshold)) return false;
  }
  return true;
}

void require_finite(double v, Index index, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite ") + what + " at index " + std::to_string(index));
}

}  // namespace

double fitted_slope(std::span<const Index> horizons, std::span<const double> values) {
  const std::size_t n = std::min(horizons.size(), values.size());
  if (n < 2) return 0.0;
  if (std::all_of(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n), [](double v) { return v == 0.0; }))
    return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(static_cast<double>(horizons[i]));
    my += safe_log(values[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(static_cast<double>(horizons[i])) - mx;
    sxy += dx * (safe_log(values[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

double step_slope(double from, double to, Index h_from, Index h_to) {
  const double a = std::fabs(from);
  const double b = std::fabs(to);
  if (a == 0.0 && b == 0.0) return 0.0;
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  if (b == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(b / a) / std::log(static_cast<double>(h_to) / static_cast<double>(h_from));
}

std::vector<Index> usable_points(const Horizon& h, Index available) {
  std::vector<Index> pts;
  for (Index p : h.points()) {
    if (p <= available) pts.push_back(p);
  }
  if (pts.size() < 2) pts.clear();
  return pts;
}

GrowthProfile partial_sum_profile(std::span<const double> terms, std::span<const Index> points) {
  GrowthProfile prof;
  double s = 0.0;
  Index k = 0;
  for (Index p : points) {
    for (; k < p; ++k) {
      s += terms[static_cast<std::size_t>(k)];
      require_finite(s, k + 1, "partial sum");
    }
    prof.horizons.push_back(p);
    prof.values.push_back(s);
  }
  prof.slope = fitted_slope(prof.horizons, prof.values);
  return prof;
}

Verdict judge_series_profile(const GrowthProfile& p, const EstimatorConfig& cfg) {
  Verdict v;
  if (p.values.size() < 2) {
    v.value = p.values.empty() ? 0.0 : p.values.back();
    v.note = "fewer than two horizon points";
    return v;
  }
  const double last = p.values.back();
  const double prev = p.values[p.values.size() - 2];
  const double rel = std::fabs(last - prev) / std::max(1.0, std::fabs(last));
  v.value = last;
  if (rel < cfg.stall_rel_tol && p.slope < cfg.slope_hold) {
    v.status = Status::Holds;
    v.margin_or_trend = cfg.stall_rel_tol - rel;
  } else if (all_steps_above(p, cfg.slope_fail)) {
    v.status = Status::Fails;
    v.margin_or_trend = p.slope;
    v.witness = p.horizons.back();
  } else {
    v.margin_or_trend = p.slope;
  }
  return v;
}

Verdict judge_sup_profile(const GrowthProfile& p, const EstimatorConfig& cfg) {
  Verdict v;
  if (p.values.size() < 2) {
    v.value = p.values.empty() ? 0.0 : p.values.back();
    v.note = "fewer than two horizon points";
    return v;
  }
  const double last = p.values.back();
  const double prev = p.values[p.values.size() - 2];
  const double change = std::fabs(last - prev);
  v.value = last;
  if (change <= cfg.stall_rel_tol * std::max(1.0, std::fabs(last))) {
    v.status = Status::Holds;
    v.margin_or_trend = cfg.stall_rel_tol * std::max(1.0, std::fabs(last)) - change;
  } else if (all_steps_above(p, cfg.slope_fail)) {
    v.status = Status::Fails;
    v.margin_or_trend = p.slope;
  } else {
    v.margin_or_trend = p.slope;
  }
  return v;
}

Verdict series_verdict(std::span<const double> terms, const Horizon& h, const EstimatorConfig& cfg, bool complete) {
  const auto pts = usable_points(h, static_cast<Index>(terms.size()));
  Verdict v;
  if (pts.empty()) {
    double s = 0.0;
    for (double t : terms) s += t;
    v.value = s;
    v.note = "not enough evaluable terms for the horizon";
    return v;
  }
  v = judge_series_profile(partial_sum_profile(terms, pts), cfg);
  if (!complete) v = force_inconclusive(std::move(v), "unknown tail");
  return v;
}

Verdict series_verdict(const Sequence& terms, const Horizon& h, const EstimatorConfig& cfg) {
  const Index count = std::min(h.max(), terms.evaluable_end());
  return series_verdict(terms.values(count), h, cfg, !terms.tail_unknown());
}

Verdict sup_verdict(std::span<const double> values, const Horizon& h, const EstimatorConfig& cfg, bool complete) {
  const auto pts = usable_points(h, static_cast<Index>(values.size()));
  Verdict v;
  if (pts.empty()) {
    v.note = "not enough evaluable values for the horizon";
    if (!values.empty()) v.value = *std::max_element(values.begin(), values.end());
    return v;
  }
  GrowthProfile prof;
  double best = -std::numeric_limits<double>::infinity();
  Index arg = 1;
  Index k = 0;
  for (Index p : pts) {
    for (; k < p; ++k) {
      const double x = values[static_cast<std::size_t>(k)];
      require_finite(x, k + 1, "value");
      if (x > best) {
        best = x;
        arg = k + 1;
      }
    }
    prof.horizons.push_back(p);
    prof.values.push_back(best);
  }
  prof.slope = fitted_slope(prof.horizons, prof.values);
  v = judge_sup_profile(prof, cfg);
  v.witness = arg;
  if (!complete) v = force_inconclusive(std::move(v), "unknown tail");
  return v;
}

Verdict sup_verdict(const std::function<double(Index)>& family, const Horizon& h, const EstimatorConfig& cfg) {
  std::vector<double> vals(static_cast<std::size_t>(h.max()));
  for (Index i = 1; i <= h.max(); ++i) vals[static_cast<std::size_t>(i - 1)] = family(i);
  return sup_verdict(vals, h, cfg);
}

Verdict limit_verdict(std::span<const double> values, const Horizon& h, LimitMode mode, LimitGate gate,
                      const EstimatorConfig& cfg, bool complete) {
  const auto pts = usable_points(h, static_cast<Index>(values.size()));
  Verdict v;
  if (pts.empty()) {
    v.note = "not enough evaluable values for the horizon";
    return v;
  }
  std::vector<double> width;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double mag = 0.0;
    for (Index i = pts[j - 1] + 1; i <= pts[j]; ++i) {
      const double x = values[static_cast<std::size_t>(i - 1)];
      require_finite(x, i, "value");
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      mag = std::max(mag, std::fabs(x));
    }
    width.push_back(mode == LimitMode::Exists ? hi - lo : mag);
  }
  const double last_value = values[static_cast<std::size_t>(pts.back() - 1)];
  const double tol = mode == LimitMode::Exists ? cfg.stall_rel_tol * std::max(1.0, std::fabs(last_value))
                                               : cfg.zero_tol;
  const double w = width.back();

  bool shrinking = gate == LimitGate::Trend && width.size() >= 2;
  bool nondecreasing = width.size() >= 2;
  for (std::size_t j = 1; j < width.size(); ++j) {
    const double ratio = width[j - 1] > 0.0 ? std::log2(width[j] / width[j - 1])
                                            : (width[j] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (!(ratio <= -cfg.slope_fail)) shrinking = false;
    if (width[j] < width[j - 1]) nondecreasing = false;
  }

  v.value = mode == LimitMode::Exists ? last_value : w;
  v.margin_or_trend = w;
  if (w <= tol || shrinking) {
    v.status = Status::Holds;
    if (mode == LimitMode::Zero) v.value = 0.0;
    v.margin_or_trend = tol - w;
    if (w > tol) v.note = "window " + std::string(mode == LimitMode::Exists ? "oscillation" : "magnitude") +
                          " shrinking at every doubling";
  } else if (nondecreasing) {
    v.status = Status::Fails;
    v.witness = pts.back();
  }
  if (!complete) v = force_inconclusive(std::move(v), "unknown tail");
  return v;
}

Verdict conjoin(std::span<const Verdict> verdicts) {
  if (verdicts.empty()) return Verdict{Status::Holds, 0.0, 0.0, std::nullopt, {}};
  auto failing = std::find_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.fails(); });
  if (failing != verdicts.end()) return *failing;
  Verdict out = verdicts.front();
  const bool all_hold = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds(); });
  if (!all_hold) {
    out.status = Status::Inconclusive;
    auto first = std::find_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.holds(); });
    if (!first->note.empty()) out.note = first->note;
  }
  return out;
}

Verdict conjoin(std::initializer_list<Verdict> verdicts) {
  return conjoin(std::span<const Verdict>(verdicts.begin(), verdicts.size()));
}

Verdict force_inconclusive(Verdict v, const std::string& why) {
  if (v.status != Status::Inconclusive) {
    v.note = v.note.empty() ? why : v.note + "; " + why;
  }
  v.status = Status::Inconclusive;
  return v;
}

}  // namespace hahnkit
