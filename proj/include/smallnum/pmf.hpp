#pragma once

// Finite-support distributions on {0, 1, 2, ...} and pointwise laws that are
// never truncated (Poisson, two-atom compound Poisson).

#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace smallnum {

inline constexpr double kDefaultTailEps = 1e-12;
inline constexpr std::size_t kMaxSupport = 1'000'000;
inline constexpr std::size_t kUnboundedSupport =
    std::numeric_limits<std::size_t>::max();

/// Tolerance on |sum(probs) + tail - 1| accepted by Pmf.
inline constexpr double kMassTolerance = 1e-12;

/// A law that can be evaluated at any nonnegative integer.
///
/// `support_bound()` is one past the largest index with positive mass, or
/// kUnboundedSupport; `mass_above(k)` is the probability of {x > k}.
template <typename L>
concept PointwiseLaw = requires(const L& law, std::size_t k) {
  { law.pmf(k) } -> std::convertible_to<double>;
  { law.log_pmf(k) } -> std::convertible_to<double>;
  { law.mass_above(k) } -> std::convertible_to<double>;
  { law.support_bound() } -> std::convertible_to<std::size_t>;
};

/// Probability mass function with finite support {0, ..., size()-1}.
///
/// Mass that was knowingly cut off beyond the last index is carried in
/// `tail()`; it is zero for laws built from finitely many finite-support
/// summands. Values are immutable once constructed and the moments are
/// computed eagerly.
class Pmf {
 public:
  /// Throws std::invalid_argument unless every entry lies in [0, 1], tail is
  /// nonnegative and sum(probs) + tail is within kMassTolerance of one.
  static Pmf from_probs(std::vector<double> probs, double tail = 0.0);
  /// As from_probs, but mean() and variance() report the given moments of
  /// the untruncated law instead of sums over the stored support.
  static Pmf from_law(std::vector<double> probs, double tail, double mean,
                      double variance);

  /// Degenerate law at `at`.
  static Pmf point_mass(std::size_t at = 0);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double tail() const noexcept { return tail_; }

  double operator[](std::size_t k) const noexcept {
    return k < probs_.size() ? probs_[k] : 0.0;
  }
  double pmf(std::size_t k) const noexcept { return (*this)[k]; }
  double log_pmf(std::size_t k) const noexcept;
  double mass_above(std::size_t k) const noexcept;
  std::size_t support_bound() const noexcept { return probs_.size(); }

  /// Moments over the stored support; the truncated tail contributes nothing.
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }

 private:
  Pmf(std::vector<double> probs, double tail);

  std::vector<double> probs_;
  double tail_ = 0.0;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

/// Poisson(lambda) evaluated pointwise in log space.
class PoissonLaw {
 public:
  explicit PoissonLaw(double lambda);

  double lambda() const noexcept { return lambda_; }
  double log_pmf(std::size_t k) const noexcept;
  double pmf(std::size_t k) const noexcept;
  double mass_above(std::size_t k) const noexcept;
  std::size_t support_bound() const noexcept { return kUnboundedSupport; }

 private:
  double lambda_;
  double log_lambda_;
};

/// Law of Z1 + 2*Z2 with independent Z1 ~ Poisson(lambda1), Z2 ~ Poisson(lambda2).
/// Pointwise values come from the Panjer recursion
///   k g(k) = lambda1 g(k-1) + 2 lambda2 g(k-2),   g(0) = exp(-(lambda1+lambda2)),
/// carried out in log space.
class CompoundPoissonLaw {
 public:
  CompoundPoissonLaw(double lambda1, double lambda2);

  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }
  double mean() const noexcept { return lambda1_ + 2.0 * lambda2_; }

  double log_pmf(std::size_t k) const;
  double pmf(std::size_t k) const;
  double mass_above(std::size_t k) const;
  std::size_t support_bound() const noexcept { return kUnboundedSupport; }

  /// log g(0), ..., log g(last).
  std::vector<double> log_pmf_upto(std::size_t last) const;

 private:
  double lambda1_;
  double lambda2_;
};

static_assert(PointwiseLaw<Pmf>);
static_assert(PointwiseLaw<PoissonLaw>);
static_assert(PointwiseLaw<CompoundPoissonLaw>);

Pmf pmf_bernoulli(double p);

/// Poisson(lambda) on [0, N] where N is the first index at or above
/// ceil(lambda) whose upper-tail mass is <= tail_eps. Requires lambda > 0 and
/// 0 < tail_eps <= 1e-6.
Pmf pmf_poisson_truncated(double lambda, double tail_eps = kDefaultTailEps);

/// Geometric law P(x) = (1-q)^x q, truncated once (1-q)^(N+1) <= tail_eps.
Pmf pmf_geometric(double q, double tail_eps = kDefaultTailEps);

/// Materialized compound Poisson: each Poisson component truncated at
/// tail_eps / 2, then convolved exactly.
Pmf pmf_compound_poisson(const CompoundPoissonLaw& law,
                         double tail_eps = kDefaultTailEps);

/// Smallest N >= ceil(lambda) with P(X > N) <= tail_eps for X ~ Poisson(lambda).
std::size_t poisson_horizon(double lambda, double tail_eps);

}  // namespace smallnum
