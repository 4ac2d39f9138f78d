#pragma once

// Each Poisson-approximation inequality as a checkable BoundReport.
//
// Tolerances: inequalities are checked at 1e-9 absolute, identities at 1e-8
// and the smoothing-integral identity at 1e-4.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "smallnum/bound_report.hpp"
#include "smallnum/joint_binary.hpp"
#include "smallnum/pmf.hpp"
#include "smallnum/quadrature.hpp"

namespace smallnum {

inline constexpr double kInequalityTol = 1e-9;
inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kQuadratureTol = 1e-4;
inline constexpr double kPinskerTol = 1e-10;

/// D(law of sum || Po(lambda)) <= sum p_i^2 + [sum H(X_i) - H(X_1..X_n)].
BoundReport prop1_report(const JointBinary& joint);

/// Independent special case D(S_n || Po(lambda)) <= sum p_i^2, for lists too
/// long for the 2^n oracle.
BoundReport prop1_independent_report(std::span<const double> ps);

/// D(S_n || Po(lambda)) <= (1/lambda) sum p_i^3 / (1 - p_i).
BoundReport theorem1_report(std::span<const double> ps);

/// The two links D <= K(S_n) and K(S_n) <= (1/lambda) sum p_i^3/(1-p_i).
std::vector<BoundReport> theorem1_proof_chain(std::span<const double> ps);

/// ||S_n - Po(lambda)|| <= sum p_i^2, reported under the un-halved L1
/// convention ("lecam_l1") and the halved one ("lecam_halved").
std::array<BoundReport, 2> lecam_report(std::span<const double> ps);

/// D(P || Po(mean)) <= K(P).
BoundReport prop2_report(const Pmf& p);

/// ||P - Po(mean)|| <= sqrt(2 K(P)).
BoundReport tvbound_report(const Pmf& p);

/// hellinger_sq <= 2(1 - mu^2) <= 2 K(P), with mu the Hellinger affinity.
BoundReport hellinger_chain_report(const Pmf& p);

/// (sigma^2 - lambda)^2 / (sigma^2 lambda) <= K(P). Needs positive variance.
BoundReport cramer_rao_report(const Pmf& p);

/// K(sum of parts) <= sum (p_i/lambda) K(X_i).
BoundReport subadditivity_report(std::span<const Pmf> parts);

/// (1/2) ||P - Q||^2 <= D(P || Q).
BoundReport pinsker_report(const Pmf& p, const Pmf& q);

/// Var_{Po(lambda)}(g) <= lambda E_{Po(lambda)}[(g(x+1) - g(x))^2], with both
/// expectations taken over x <= horizon. g must be defined up to horizon + 1.
BoundReport poincare_check(double lambda,
                           const std::function<double(std::size_t)>& g,
                           std::size_t horizon);

/// Exact D(S_n || Po(1)) <= 1/n + (n-1) I(X_1; X_2) <= 3 log(n)/n + 1/n for
/// the stationary two-state chain. Requires n >= 3.
BoundReport markov_example_report(std::size_t n);

/// (n-1) I(X_1; X_2) for the stationary chain written through binary
/// entropies; an independent route to the same number.
double markov_mi_closed_form(std::size_t n);

/// Aggregate D(sum alpha_i X_i || Po(lambda/2, lambda/2)) <= sum p_i^2 first,
/// then one per-term report D(alpha_i X_i || Po(p_i/2, p_i/2)) <= p_i^2.
std::vector<BoundReport> compound_example_report(std::span<const double> ps);

/// Closed form of D([1-p, p/2, p/2] || Po(p/2, p/2)):
/// p^2 + (1-p)(p + log(1-p)) - (p/2) log(1 + p/4).
double compound_term_divergence(double p);

/// t_max = 50 (1 + lambda), abs_tol = 1e-6, max_depth = 50.
QuadratureSpec default_quadrature(double lambda);

struct DeBruijnOutcome {
  /// lhs = |D - integral|, rhs = 0, tolerance max(abs_tol, 1e-4).
  BoundReport report;
  double divergence = 0.0;
  /// Quadrature over [0, t_max] plus the tail estimate.
  double integral = 0.0;
  double tail_estimate = 0.0;
  /// Worst |sum_r (r+1) P_t(r+1)/(lambda+t) - 1| over quadrature nodes.
  double max_normalization_error = 0.0;
  std::size_t evaluations = 0;
};

/// D(P || Po(lambda)) against the integral over t of D(P_t || P~_t) where
/// P_t = law of X + Po(t) and P~_t(r) = (r+1) P_t(r+1) / (lambda + t).
DeBruijnOutcome debruijn_identity_report(const Pmf& p, const QuadratureSpec& quad);

struct DeBruijnDiagnostic {
  double divergence = 0.0;
  /// Integral of K(X + Po(t)) / (2 (lambda + t)) including its tail estimate.
  double approximation = 0.0;
  double tail_estimate = 0.0;
};

/// Quadratic-term approximation of the smoothing integral; nothing asserted.
DeBruijnDiagnostic debruijn_diagnostic(const Pmf& p, const QuadratureSpec& quad);

/// For each t: K(X + Po(t)) <= lambda/(lambda + t) K(X) (+1e-8).
std::vector<BoundReport> smoothing_decay_check(const Pmf& p,
                                               std::span<const double> ts);

/// D(Bern(p) || Po(p)) = p + (1-p) log(1-p), for 0 <= p < 1.
double bernoulli_poisson_gap(double p);

/// bernoulli_poisson_gap(p) <= p^2, with the pointwise divergence attached.
BoundReport bernoulli_gap_report(double p);

/// Pinsker applied to the Bernoulli-sum divergence bound for n iid Bernoulli(lambda/n):
/// sqrt(2 rhs) <= (2 + eps) lambda / n with eps = lambda / n.
BoundReport example1_rate_report(double lambda, std::size_t n);

}  // namespace smallnum
