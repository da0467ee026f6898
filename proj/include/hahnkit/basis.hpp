#pragma once

#include "hahnkit/estimator.hpp"
#include "hahnkit/seqcore.hpp"

namespace hahnkit {

/// b^(k): 1/k on 1..k, zero afterwards.
Sequence basis_element(Index k);

struct Expansion {
  /// lambda = Mx
  Sequence coefficients;
  Index order = 0;
  /// x^[m] = sum_{k<=m} lambda_k b^(k)
  Sequence reconstruction;
};

Expansion expand(const Sequence& x, Index m);

/// ||x - x^[m]|| in hp, over the horizon. 0 when x is supported on 1..m.
/// Throws DivergenceError if x itself measures as outside hp.
double reconstruction_error(const Sequence& x, Index m, const ExponentPair& pq, const Horizon& horizon = {},
                            const EstimatorConfig& cfg = {});

}  // namespace hahnkit
