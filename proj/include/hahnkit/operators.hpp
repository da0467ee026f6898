#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hahnkit/estimator.hpp"
#include "hahnkit/seqcore.hpp"

namespace hahnkit {

// ---------------------------------------------------------------------------
// Sequence operators

/// (x_k - x_{k+1})_k
Sequence delta(const Sequence& x);

/// y_k = k (x_k - x_{k+1})
Sequence m_transform(const Sequence& x);

/// x_k = sum_{j >= k} y_j / j. Exact for Zero tails (summed over the whole
/// support); otherwise summed to horizon.max() and returned with an Unknown tail.
Sequence m_inverse(const Sequence& y, const Horizon& horizon = {});

/// (k x_k)_k, reducing membership in the integrated space to the base space.
Sequence index_scale(const Sequence& x);

// ---------------------------------------------------------------------------
// Infinite matrices

enum class MatrixKind { Named, Banded, DenseBlock, DMatrix, BMatrix, Bar, Tilde };
enum class NamedMatrix { Identity, Zero, M, Ones };

const char* to_string(NamedMatrix id);
NamedMatrix parse_named_matrix(std::string_view name);

/// Columns [first, last] that may hold non-zero entries of a row; empty
/// when first > last, unbounded when last == kUnbounded.
struct RowSupport {
  Index first = 1;
  Index last = 0;

  bool empty() const noexcept { return first > last; }
  bool bounded() const noexcept { return last != kUnbounded; }
};

struct TriangleTag {
  bool is_triangle = false;
  Index checked_up_to = 0;
};

/// Immutable rule-defined infinite matrix (1-based n, k). Copies share state.
class InfMatrix {
 public:
  /// The zero matrix.
  InfMatrix();

  static InfMatrix named(NamedMatrix id, std::string label = {});
  /// entry(n, k) = rules[i](n, k) when k - n == offsets[i], else 0.
  static InfMatrix banded(std::vector<Index> offsets, std::vector<dsl::Expr> rules, std::string label = {});
  /// Row-major rows x cols block, zero outside.
  static InfMatrix dense_block(Index rows, Index cols, std::vector<double> entries, std::string label = {});
  /// d_nk = a_n / k for k >= n, else 0.
  static InfMatrix d_matrix(Sequence a, std::string label = {});
  /// b_nk = (sum_{j<=k} a_j) / k for n <= k, else 0.
  static InfMatrix b_matrix(Sequence a, std::string label = {});

  MatrixKind kind() const noexcept;
  const std::string& label() const noexcept;

  double entry(Index n, Index k) const;
  /// out[k-1] = entry(n, k) for k = 1..out.size().
  void row(Index n, std::span<double> out) const;
  RowSupport row_support(Index n) const;
  /// Rows beyond this bound are zero.
  std::optional<Index> row_bound() const;
  /// Columns beyond this bound are zero.
  std::optional<Index> col_bound() const;

  /// Row n as a sequence: exact tail where the family allows it, else the
  /// first horizon.max() entries with an Unknown tail.
  Sequence row_sequence(Index n, const Horizon& horizon) const;

  // Accessors for serialization.
  NamedMatrix named_id() const;
  const std::vector<Index>& band_offsets() const;
  const std::vector<dsl::Expr>& band_rules() const;
  Index block_rows() const;
  Index block_cols() const;
  std::span<const double> block_entries() const;
  const Sequence& generator() const;

  struct Impl;

 private:
  explicit InfMatrix(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend InfMatrix bar_transform(const InfMatrix& a, const Horizon& horizon);
  friend InfMatrix tilde_transform(const InfMatrix& a);
};

/// Row-major rows x cols window of a matrix.
std::vector<double> window(const InfMatrix& a, Index rows, Index cols);

/// (Ax)_n = sum_k a_nk x_k with ascending in-row summation. Rows with an
/// unbounded overlap are summed to horizon.max() and checked for divergence.
Sequence mat_apply(const InfMatrix& a, const Sequence& x, const Horizon& horizon = {},
                   const EstimatorConfig& cfg = {});

/// abar_nk = sum_{j >= k} a_nj / j, via the right-to-left suffix recurrence.
/// Rows with unbounded support are summed to horizon.max(); a divergent row
/// tail raises DivergenceError when the row is evaluated.
InfMatrix bar_transform(const InfMatrix& a, const Horizon& horizon = {});

/// atilde_nk = n (a_nk - a_{n+1,k}), exact entrywise.
InfMatrix tilde_transform(const InfMatrix& a);

/// Lower-triangular with non-zero diagonal on rows/columns 1..up_to.
TriangleTag check_triangle(const InfMatrix& a, Index up_to);

}  // namespace hahnkit
