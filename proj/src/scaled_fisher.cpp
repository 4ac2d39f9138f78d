#include "smallnum/scaled_fisher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smallnum/numeric.hpp"
#include "smallnum/sum_engines.hpp"

namespace smallnum {

double ScoreProfile::mean_under(const Pmf& p) const {
  CompensatedSum acc;
  for (std::size_t x = 0; x < scores.size(); ++x) {
    if (scores[x]) acc += p[x] * *scores[x];
  }
  return acc.value();
}

ScoreProfile scaled_score(const Pmf& p) {
  const double lambda = p.mean();
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("scaled_score: mean must be positive");
  }
  ScoreProfile out;
  out.lambda = lambda;
  out.scores.resize(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) {
      // Ratio first: lambda * p[x] can underflow when both factors are small.
      out.scores[x] =
          p[x + 1] / p[x] * (static_cast<double>(x + 1) / lambda) - 1.0;
    }
  }
  return out;
}

double scaled_fisher_info(const ScoreProfile& profile, const Pmf& p) {
  CompensatedSum acc;
  for (std::size_t x = 0; x < profile.scores.size(); ++x) {
    if (!profile.scores[x]) continue;
    const double r = *profile.scores[x];
    acc += p[x] * r * r;
  }
  return profile.lambda * acc.value();
}

double scaled_fisher_info(const Pmf& p) {
  return scaled_fisher_info(scaled_score(p), p);
}

double cramer_rao_lower(double lambda, double sigma_sq) {
  if (!(lambda > 0.0) || !(sigma_sq > 0.0)) {
    throw std::invalid_argument("cramer_rao_lower: lambda and variance must be positive");
  }
  const double d = sigma_sq - lambda;
  return d * d / (sigma_sq * lambda);
}

double subadditive_combination(std::span<const MeanAndFisher> parts) {
  if (parts.empty()) {
    throw std::invalid_argument("subadditive_combination: no parts");
  }
  CompensatedSum lambda;
  for (const auto& part : parts) {
    if (!(part.mean > 0.0)) {
      throw std::invalid_argument("subadditive_combination: means must be positive");
    }
    lambda += part.mean;
  }
  CompensatedSum acc;
  for (const auto& part : parts) acc += part.mean * part.fisher;
  return acc.value() / lambda.value();
}

double convolution_lemma_residual(const Pmf& p, const Pmf& q) {
  const ScoreProfile rho_p = scaled_score(p);
  const ScoreProfile rho_q = scaled_score(q);
  const Pmf sum = convolve(p, q);
  const ScoreProfile rho_sum = scaled_score(sum);
  const double total = rho_p.lambda + rho_q.lambda;
  const double a_p = rho_p.lambda / total;
  const double a_q = rho_q.lambda / total;

  double worst = 0.0;
  for (std::size_t z = 0; z < sum.size(); ++z) {
    if (!rho_sum.scores[z]) continue;
    CompensatedSum weight;
    CompensatedSum projected;
    const std::size_t lo = z >= q.size() ? z - q.size() + 1 : 0;
    const std::size_t hi = std::min(z, p.size() - 1);
    for (std::size_t x = lo; x <= hi; ++x) {
      const double w = p[x] * q[z - x];
      if (w == 0.0) continue;
      weight += w;
      projected += w * (a_p * *rho_p.scores[x] + a_q * *rho_q.scores[z - x]);
    }
    const double conditional = projected.value() / weight.value();
    worst = std::max(worst, std::fabs(*rho_sum.scores[z] - conditional));
  }
  return worst;
}

}  // namespace smallnum
