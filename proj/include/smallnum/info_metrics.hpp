#pragma once

// Entropies, divergences and distances. All logarithms are natural.
//
// Total variation here is the un-halved L1 norm sum_x |P(x) - Q(x)|, so that
// Pinsker reads (1/2) ||P - Q||^2 <= D(P || Q).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "smallnum/joint_binary.hpp"
#include "smallnum/numeric.hpp"
#include "smallnum/pmf.hpp"

namespace smallnum {

/// Beyond the horizon, the reference law has less than this much mass left.
inline constexpr double kHorizonTail = 1e-13;

/// Relative entropy value; +infinity when P charges a point Q does not.
struct DivergenceValue {
  double value = 0.0;

  static DivergenceValue infinite() noexcept {
    return {std::numeric_limits<double>::infinity()};
  }
  bool is_infinite() const noexcept { return std::isinf(value); }
};

/// Last index at which P and Q are compared pointwise: at least the end of
/// P's support, extended until Q's remaining mass drops below kHorizonTail.
template <PointwiseLaw Law>
std::size_t evaluation_horizon(const Pmf& p, const Law& q) {
  std::size_t x = p.size() - 1;
  const std::size_t bound = q.support_bound();
  while (x + 1 < bound && q.mass_above(x) >= kHorizonTail) ++x;
  return x;
}

/// D(P || Q) over the points where P is positive, using the conventions
/// 0 log(0/a) = 0 and a log(a/0) = +inf. Tiny negative round-off is clamped.
template <PointwiseLaw Law>
DivergenceValue relative_entropy(const Pmf& p, const Law& q) {
  CompensatedSum acc;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const double px = p[x];
    if (px <= 0.0) continue;
    const double log_q = q.log_pmf(x);
    if (log_q == -std::numeric_limits<double>::infinity()) {
      return DivergenceValue::infinite();
    }
    acc += px * (std::log(px) - log_q);
  }
  return {std::max(0.0, acc.value())};
}

/// Un-halved L1 distance; mass of Q past the horizon and P's truncated tail
/// are both counted as discrepancy.
template <PointwiseLaw Law>
double total_variation(const Pmf& p, const Law& q) {
  const std::size_t horizon = evaluation_horizon(p, q);
  CompensatedSum acc;
  for (std::size_t x = 0; x <= horizon; ++x) acc += std::fabs(p[x] - q.pmf(x));
  acc += q.mass_above(horizon);
  acc += p.tail();
  return acc.value();
}

/// mu = sum_x sqrt(P(x) Q(x)).
template <PointwiseLaw Law>
double hellinger_affinity(const Pmf& p, const Law& q) {
  CompensatedSum acc;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) acc += std::sqrt(p[x] * q.pmf(x));
  }
  return acc.value();
}

/// sum_x (sqrt P(x) - sqrt Q(x))^2, which equals 2 - 2 mu for full-mass laws.
template <PointwiseLaw Law>
double hellinger_sq(const Pmf& p, const Law& q) {
  const std::size_t horizon = evaluation_horizon(p, q);
  CompensatedSum acc;
  for (std::size_t x = 0; x <= horizon; ++x) {
    const double d = std::sqrt(p[x]) - std::sqrt(q.pmf(x));
    acc += d * d;
  }
  acc += q.mass_above(horizon);
  acc += p.tail();
  return acc.value();
}

double entropy(const Pmf& p);
double entropy(std::span<const double> probs);
double joint_entropy(const JointBinary& joint);
double binary_entropy(double p);

/// H(left) + H(right) - H(left u right); index sets must be disjoint.
double mutual_information(const JointBinary& joint,
                          std::span<const std::size_t> left,
                          std::span<const std::size_t> right);

/// Largest L1 distance allowed by Pinsker: sqrt(2 d), capped at 2.
double pinsker_tv_from_divergence(DivergenceValue d);

}  // namespace smallnum
