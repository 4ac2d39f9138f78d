#pragma once

// Exact laws of sums: independent convolution, the two-state Markov chain
// dynamic program, compound sums alpha_i X_i, and a brute-force oracle over an
// explicit joint law of binary coordinates.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "smallnum/joint_binary.hpp"
#include "smallnum/pmf.hpp"

namespace smallnum {

inline constexpr std::size_t kMaxMarkovLength = 100'000;

/// Schoolbook convolution. The truncation tail of the result is the union
/// bound P.tail + Q.tail; negative round-off is clamped into that tail.
Pmf convolve(const Pmf& p, const Pmf& q);

/// Left fold of convolve over `parts` (at least one).
Pmf sum_independent(std::span<const Pmf> parts);

/// One row of a binary Markov chain triangular array.
struct MarkovChainSpec {
  std::size_t n = 1;
  /// transition[a][b] = P(X_{i+1} = b | X_i = a).
  std::array<std::array<double, 2>, 2> transition{{{1.0, 0.0}, {0.0, 1.0}}};
  /// P(X_1 = 1).
  double initial = 0.0;

  /// Throws std::invalid_argument on n == 0, entries outside [0, 1] or rows
  /// not summing to one within 1e-14.
  void validate() const;
};

/// Transition rows (n/(n+1), 1/(n+1)) and ((n-1)/(n+1), 2/(n+1)) started
/// from the stationary Bernoulli(1/n) law. Requires n >= 2.
MarkovChainSpec markov_spec_paper(std::size_t n);

/// Same chain, started from P(X_1 = 1) = initial instead of stationarity.
MarkovChainSpec markov_spec_paper(std::size_t n, double initial);

/// Exact law of X_1 + ... + X_n by dynamic programming over
/// (current state, partial sum). Rejects n > 1e5.
Pmf markov_sum_distribution(const MarkovChainSpec& spec);

/// Joint law of the whole chain (n <= 20).
JointBinary joint_from_markov(const MarkovChainSpec& spec);

/// Law of sum_i alpha_i X_i with X_i ~ Bernoulli(p_i) and alpha_i uniform on
/// {1, 2}: the convolution of the per-term laws [1-p, p/2, p/2].
Pmf compound_sum_distribution(std::span<const double> ps);

struct JointSummary {
  std::vector<double> means;
  std::vector<double> entropies;
  double joint_entropy = 0.0;
  /// Law of the number of ones, collected by popcount.
  Pmf sum_law = Pmf::point_mass(0);

  /// sum_i H(X_i) - H(X_1, ..., X_n).
  double entropy_gap() const;
};

JointSummary joint_oracle_summary(const JointBinary& joint);

/// P convolved with Poisson(t) truncated at tail_eps; t == 0 returns P.
Pmf poisson_smooth(const Pmf& p, double t, double tail_eps = kDefaultTailEps);

/// Pointwise law of X + Poisson(t) for finite-support X, evaluated exactly
/// as a finite sum at every r (no truncation).
class SmoothedLaw {
 public:
  SmoothedLaw(const Pmf& base, double t);

  double pmf(std::size_t r) const;
  double log_pmf(std::size_t r) const;
  double mass_above(std::size_t r) const;
  std::size_t support_bound() const noexcept { return kUnboundedSupport; }

  /// pmf(0), ..., pmf(last) in one pass.
  std::vector<double> pmf_upto(std::size_t last) const;

 private:
  std::vector<double> base_;
  double t_;
};

}  // namespace smallnum
