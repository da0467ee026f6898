#pragma once

#include <random>
#include <vector>

#include "hahnkit/operators.hpp"
#include "hahnkit/seqcore.hpp"

// Reference values produced by tests/oracles/gen_oracles.py (mpmath, 50 digits).
namespace oracle {
inline constexpr double kBasel2_20 = 1.6449331131743648;
inline constexpr double kHp2InvSquare = 0.82353471460207598;
inline constexpr double kHInvSquare = 2.6429833230884629;
inline constexpr double kLp2Reciprocal = 1.2821692482001603;
inline constexpr double kP3 = -0.30389321397165239;
inline constexpr double kReconErrorReciprocalM10 = 0.29313263016611165;
inline constexpr double kB2 = 0.83333333333333333;
inline constexpr double kBetaFamilyReciprocal[] = {1.0, 0.625, 0.46296296296296296, 0.36979166666666667};
inline constexpr double kSubsetSupQ1 = 7.5;
inline constexpr double kSubsetSupQ2 = 22.625;
}  // namespace oracle

namespace testgen {

using hahnkit::Index;

/// Hand-rolled generators over a seeded mt19937_64.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(eng_); }

  std::vector<double> values(Index n, double amp) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& e : v) e = uniform(-amp, amp);
    return v;
  }
  hahnkit::Sequence finite(Index max_support, double amp) {
    return hahnkit::Sequence(values(integer(1, max_support), amp));
  }
  hahnkit::InfMatrix dense(Index max_rows, Index max_cols, double amp) {
    const Index r = integer(1, max_rows);
    const Index c = integer(1, max_cols);
    return hahnkit::InfMatrix::dense_block(r, c, values(r * c, amp));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testgen
