#include "hahnkit/basis.hpp"

#include <algorithm>
#include <cmath>

#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"

namespace hahnkit {

Sequence basis_element(Index k) {
  if (k < 1) throw IndexError("basis index must be >= 1");
  if (static_cast<std::size_t>(k) > kMaxPrefix) throw IndexError("basis index beyond prefix cap");
  return Sequence(std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k)), TailModel::zero(),
                  "b^" + std::to_string(k));
}

Expansion expand(const Sequence& x, Index m) {
  if (m < 1) throw IndexError("expansion order must be >= 1");
  Sequence lambda = m_transform(x);
  // The section sum_{k<=m} lambda_k b^(k) is M^{-1} applied to the m-section of lambda.
  Sequence recon = m_inverse(truncate(lambda, m));
  return Expansion{std::move(lambda), m, std::move(recon)};
}

double reconstruction_error(const Sequence& x, Index m, const ExponentPair& pq, const Horizon& horizon,
                            const EstimatorConfig& cfg) {
  if (auto s = x.support_end(); s && *s <= m) return 0.0;
  const Expansion e = expand(x, m);
  if (x.eventually_zero()) {
    const Sequence diff = linear_combination(1.0, x, -1.0, e.reconstruction);
    return norm(diff, SpaceId::hp(pq.p), horizon, cfg).value;
  }
  // M(x - x^[m]) is lambda with its first m entries zeroed. Convergence is a
  // property of x alone; judging the residual's partial sums instead misreads
  // tails that start close to the horizon as growth.
  const Verdict v = member(x, SpaceId::hp(pq.p), horizon, cfg);
  if (v.fails()) throw DivergenceError("reconstruction error in " + to_string(SpaceId::hp(pq.p)) + ": x is outside", v);
  const Index end = std::min(horizon.max(), x.evaluable_end() - 1);
  double s = 0.0;
  for (Index k = m + 1; k <= end; ++k) s += abs_pow(e.coefficients.eval(k), pq.p);
  return std::pow(s, 1.0 / pq.p);
}

}  // namespace hahnkit
