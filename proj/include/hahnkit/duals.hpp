#pragma once

#include <span>
#include <string>
#include <vector>

#include "hahnkit/estimator.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"

namespace hahnkit {

/// Largest row count enumerated exactly.
inline constexpr Index kExactSubsetRows = 16;

struct SubsetSup {
  double value = 0.0;
  /// 1-based row indices of an achieving subset (the smallest bitmask among maxima when exact).
  std::vector<Index> subset;
  bool exact = true;
};

/// max over K of sum_{k<=cols} |sum_{n in K} c_nk|^q for a row-major block.
/// Column sums accumulate rows in ascending order.
SubsetSup subset_sup_exact(std::span<const double> c, Index rows, Index cols, double q);
/// Toggle local search from the empty and the full subset; a lower bound.
SubsetSup subset_sup_greedy(std::span<const double> c, Index rows, Index cols, double q);
/// Exact for rows <= 16, otherwise the greedy bound flagged non-exact.
SubsetSup subset_sup(const InfMatrix& c, double q, Index rows, Index cols);

/// Value of one subset, summed exactly as the enumerator sums it.
double subset_value(std::span<const double> c, Index rows, Index cols, double q, std::span<const Index> subset);

/// Growth of the subset supremum over nested truncations: subsets of the
/// first 8, 12, 16 rows (columns when `transpose`), summing over the other
/// index up to each horizon point.
///   Holds: 12 -> 16 stall and the column profile passes the series gate.
///   Fails: growth at both ladder steps or at every column doubling.
Verdict subset_sup_growth(const InfMatrix& c, double q, const Horizon& horizon, const EstimatorConfig& cfg = {},
                          bool transpose = false);

/// a in the alpha dual of h (q = 1) or hp(p) (q conjugate to p), via D = d_matrix(a).
Verdict in_alpha_dual(const Sequence& a, const SpaceId& target, const Horizon& horizon = {},
                      const EstimatorConfig& cfg = {});

/// F(n) = n^{-q} sum_{k<=n} |sum_{j=k}^{n} a_j|^q, values for n = 1..count.
std::vector<double> beta_dual_family(const Sequence& a, double q, Index count);

/// sup_n F(n) < infinity
Verdict in_beta_dual_hp(const Sequence& a, const ExponentPair& pq, const Horizon& horizon = {},
                        const EstimatorConfig& cfg = {});

/// sup_n |a_1 + ... + a_n| / n < infinity
Verdict in_sigma_inf(const Sequence& a, const Horizon& horizon = {}, const EstimatorConfig& cfg = {});

/// Same verdict as in_beta_dual_hp; the note records that the two duals coincide.
Verdict gamma_dual_hp(const Sequence& a, const ExponentPair& pq, const Horizon& horizon = {},
                      const EstimatorConfig& cfg = {});

struct PairingReport {
  GrowthProfile profile;
  Verdict verdict;
};

/// Partial sums of sum_k a_k x_k at the horizon points.
PairingReport pairing_partial_sums(const Sequence& a, const Sequence& x, const Horizon& horizon = {},
                                   const EstimatorConfig& cfg = {});

}  // namespace hahnkit
