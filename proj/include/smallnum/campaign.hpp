#pragma once

// Seeded randomized verification campaigns. Every trial owns an RNG seeded
// from (campaign seed, trial index), trials run in parallel and results are
// assembled in trial order so output is deterministic.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smallnum/bound_report.hpp"
#include "smallnum/joint_binary.hpp"
#include "smallnum/pmf.hpp"

namespace smallnum {

enum class Family { BernoulliLists, RandomPmf, JointBinaryFamily, GeometricLists };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
  Family family = Family::BernoulliLists;
  /// 0 selects the family default (50, 30, 12, 6 respectively).
  std::size_t max_n = 0;
  double tail_eps = kDefaultTailEps;
  std::optional<double> tol_override;
  bool unsafe = false;

  /// Throws ConfigError on trials == 0, max_n beyond the engine caps, an
  /// out-of-range tail_eps, or a tolerance override that would loosen a
  /// default without `unsafe`.
  void validate() const;
  std::size_t effective_max_n() const;
};

struct TrialFailure {
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  BoundReport report;
};

struct CampaignSummary {
  CampaignConfig config;
  std::size_t reports = 0;
  std::map<std::string, std::size_t> reports_by_name;
  std::vector<TrialFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Seed for trial `trial` of a campaign (splitmix64 mixing).
std::uint64_t trial_seed(std::uint64_t campaign_seed, std::size_t trial);

/// Reports produced by one trial of the configured family.
std::vector<BoundReport> run_trial(const CampaignConfig& config, std::size_t trial);

CampaignSummary run_campaign(const CampaignConfig& config);

/// JSON summary: config, report counts and each failure with its seed.
std::string summary_to_json(const CampaignSummary& summary);

// Instance generators shared with the acceptance suite.

/// n uniform on [1, max_n], p_i uniform on [0, max_p].
std::vector<double> random_bernoulli_list(std::mt19937_64& rng, std::size_t max_n,
                                          double max_p);

/// Full support of random length in [min_len, max_len], normalized
/// exponential weights.
Pmf random_full_support_pmf(std::mt19937_64& rng, std::size_t min_len,
                            std::size_t max_len);

/// Mixes independent products, random Markov chains, sparse Dirichlet-like
/// atoms and two-component mixtures of products. n uniform on [1, max_n].
JointBinary random_joint_binary(std::mt19937_64& rng, std::size_t max_n);

/// Success probabilities q_i uniform on [0.2, 1), list length in [1, max_n].
std::vector<double> random_geometric_list(std::mt19937_64& rng, std::size_t max_n);

/// Polynomial coefficients c_0..c_d, d uniform on [0, max_degree], each
/// coefficient uniform on [-1, 1].
std::vector<double> random_polynomial(std::mt19937_64& rng, std::size_t max_degree);

double eval_polynomial(const std::vector<double>& coeffs, double x);

}  // namespace smallnum
