#pragma once

// Scaled score rho(x) = (x+1) P(x+1) / (lambda P(x)) - 1 and the scaled
// Fisher information K = lambda E[rho^2], which vanishes exactly for Poisson.

#include <optional>
#include <span>
#include <vector>

#include "smallnum/pmf.hpp"

namespace smallnum {

struct ScoreProfile {
  double lambda = 0.0;
  /// One entry per support point; empty where P(x) == 0.
  std::vector<std::optional<double>> scores;

  /// E_P[rho], zero for any law with positive mean.
  double mean_under(const Pmf& p) const;
};

/// Throws std::invalid_argument when mean(P) == 0. The last support point
/// always scores -1 since P(x+1) reads as zero there.
ScoreProfile scaled_score(const Pmf& p);

double scaled_fisher_info(const Pmf& p);
double scaled_fisher_info(const ScoreProfile& profile, const Pmf& p);

/// (sigma^2 - lambda)^2 / (sigma^2 lambda), a lower bound on K for any law
/// with that mean and variance.
double cramer_rao_lower(double lambda, double sigma_sq);

struct MeanAndFisher {
  double mean = 0.0;
  double fisher = 0.0;
};

/// sum_i (p_i / lambda) K_i with lambda = sum_i p_i; an upper bound on K of
/// the independent sum.
double subadditive_combination(std::span<const MeanAndFisher> parts);

/// max over z of |rho_{X+Y}(z) - E[a_X rho_X(X) + a_Y rho_Y(Y) | X+Y = z]|
/// with a_X = p/(p+q), a_Y = q/(p+q); the conditional expectation is
/// enumerated exactly. Both means must be positive.
double convolution_lemma_residual(const Pmf& p, const Pmf& q);

}  // namespace smallnum
