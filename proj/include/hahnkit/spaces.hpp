#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hahnkit/estimator.hpp"
#include "hahnkit/seqcore.hpp"

namespace hahnkit {

enum class SpaceKind { Ellp, Ellinf, C, C0, Bs, Cs, Bvp, Bv0p, IntOf, H, Hp, SigmaInf };

/// A sequence space. `p` is used by ellp, bvp, bv0p and hp; IntOf wraps one
/// non-IntOf base space given by (inner, p).
struct SpaceId {
  SpaceKind kind = SpaceKind::Ellp;
  double p = 2.0;
  SpaceKind inner = SpaceKind::Ellp;

  static SpaceId ellp(double p);
  static SpaceId ellinf() { return {SpaceKind::Ellinf, 1.0, SpaceKind::Ellp}; }
  static SpaceId c() { return {SpaceKind::C, 1.0, SpaceKind::Ellp}; }
  static SpaceId c0() { return {SpaceKind::C0, 1.0, SpaceKind::Ellp}; }
  static SpaceId bs() { return {SpaceKind::Bs, 1.0, SpaceKind::Ellp}; }
  static SpaceId cs() { return {SpaceKind::Cs, 1.0, SpaceKind::Ellp}; }
  static SpaceId bvp(double p);
  static SpaceId bv0p(double p);
  static SpaceId int_of(const SpaceId& base);
  static SpaceId h() { return {SpaceKind::H, 1.0, SpaceKind::Ellp}; }
  static SpaceId hp(double p);
  static SpaceId sigma_inf() { return {SpaceKind::SigmaInf, 1.0, SpaceKind::Ellp}; }

  bool has_exponent() const noexcept;
  /// The wrapped space of an IntOf.
  SpaceId base() const;

  friend bool operator==(const SpaceId& a, const SpaceId& b) noexcept;
};

/// "lp:2", "linf", "c", "c0", "bs", "cs", "bvp:2", "bv0p:2", "int:<space>",
/// "h", "hp:2", "sigma_inf".
SpaceId parse_space(std::string_view text);
std::string to_string(const SpaceId& s);
/// Shortest round-trip decimal form of an exponent.
std::string format_exponent(double p);

struct NormReport {
  SpaceId space;
  double value = 0.0;
  Index horizon_used = 0;
  bool exact = false;
};

/// Norm at the horizon (or exactly, over the whole support, for Zero tails).
/// Throws DivergenceError when the defining series or sup measures as Fails.
///   hp: (sum (k |x_k - x_{k+1}|)^p)^(1/p)    h: sum k |x_k - x_{k+1}| + sup |x_k|
///   bvp: differences x_k - x_{k-1} with x_0 = 0    bs, cs: sup |partial sum|
NormReport norm(const Sequence& x, const SpaceId& space, const Horizon& horizon = {},
                const EstimatorConfig& cfg = {});

Verdict member(const Sequence& x, const SpaceId& space, const Horizon& horizon = {},
               const EstimatorConfig& cfg = {});

struct InequalityPoint {
  Index r = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct DecompositionReport {
  Verdict hp;
  Verdict ellp;
  Verdict int_bvp;
  /// False when hp disagrees decisively with the intersection of the other two.
  bool consistent = true;
  std::vector<InequalityPoint> inequality;

  bool inequality_holds() const;
};

/// hp against ellp and int:bvp, plus
///   sum_{k<=r} k^p |dx_k|^p <= 2^p [sum_{k<=r} |x_k|^p + sum_{k<=r} |d(k x_k)|^p]
/// at every horizon point r.
DecompositionReport decomposition_check(const Sequence& x, const ExponentPair& pq, const Horizon& horizon = {},
                                        const EstimatorConfig& cfg = {});

/// |v|^p with a fixed evaluation path, shared so that equal inputs give bit-identical sums.
double abs_pow(double v, double p);

}  // namespace hahnkit
