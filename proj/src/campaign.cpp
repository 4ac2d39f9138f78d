#include "smallnum/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <thread>

#include "smallnum/bound_suite.hpp"
#include "smallnum/info_metrics.hpp"
#include "smallnum/scaled_fisher.hpp"
#include "smallnum/sum_engines.hpp"

namespace smallnum {

namespace {

constexpr std::string_view kFamilyNames[] = {"bernoulli-lists", "random-pmf",
                                             "joint-binary", "geometric-lists"};

// Smallest default tolerance among the reports each family emits.
double minimal_default_tolerance(Family f) {
  switch (f) {
    case Family::BernoulliLists:
    case Family::GeometricLists:
      return kInequalityTol;
    case Family::RandomPmf:
    case Family::JointBinaryFamily:
      return kPinskerTol;
  }
  return kPinskerTol;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

BoundReport identity_report(std::string name, double a, double b, double tol) {
  return BoundReport::make(std::move(name), std::fabs(a - b), 0.0, tol)
      .with("first", a)
      .with("second", b);
}

void append(std::vector<BoundReport>& out, std::vector<BoundReport> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()),
             std::make_move_iterator(more.end()));
}

std::vector<BoundReport> bernoulli_trial(std::mt19937_64& rng, std::size_t max_n) {
  std::vector<double> ps = random_bernoulli_list(rng, max_n, 0.5);
  while (std::all_of(ps.begin(), ps.end(), [](double p) { return p == 0.0; })) {
    ps = random_bernoulli_list(rng, max_n, 0.5);
  }
  std::vector<BoundReport> out;
  out.push_back(theorem1_report(ps));
  append(out, theorem1_proof_chain(ps));
  out.push_back(prop1_independent_report(ps));
  out.push_back(lecam_report(ps)[1]);
  out.push_back(bernoulli_gap_report(ps.front()));
  append(out, compound_example_report(ps));

  std::vector<Pmf> parts;
  for (double p : ps) {
    if (p > 0.0) parts.push_back(pmf_bernoulli(p));
  }
  out.push_back(subadditivity_report(parts));
  out.push_back(cramer_rao_report(sum_independent(parts)));
  if (parts.size() >= 2) {
    out.push_back(BoundReport::make("convolution_lemma",
                                    convolution_lemma_residual(parts[0], parts[1]),
                                    0.0, kIdentityTol));
  }
  return out;
}

std::vector<BoundReport> random_pmf_trial(std::mt19937_64& rng, std::size_t max_len) {
  const Pmf p = random_full_support_pmf(rng, 2, max_len);
  const Pmf q = random_full_support_pmf(rng, p.size(), p.size());
  std::vector<BoundReport> out;
  out.push_back(prop2_report(p));
  out.push_back(tvbound_report(p));
  out.push_back(hellinger_chain_report(p));
  out.push_back(cramer_rao_report(p));
  out.push_back(pinsker_report(p, q));
  out.push_back(BoundReport::make("score_mean_zero",
                                  std::fabs(scaled_score(p).mean_under(p)), 0.0,
                                  kPinskerTol));
  out.push_back(BoundReport::make("convolution_lemma",
                                  convolution_lemma_residual(p, q), 0.0,
                                  kIdentityTol));
  const Pmf parts[] = {p, q};
  out.push_back(subadditivity_report(parts));
  out.push_back(cramer_rao_report(convolve(p, q)));
  const double ts[] = {0.5, 2.0};
  append(out, smoothing_decay_check(p, ts));

  const double lambda = uniform(rng, 0.05, 5.0);
  const std::vector<double> poly = random_polynomial(rng, 4);
  const std::size_t horizon = poisson_horizon(lambda, 1e-16) + 10;
  out.push_back(poincare_check(
      lambda,
      [&poly](std::size_t x) { return eval_polynomial(poly, static_cast<double>(x)); },
      horizon)
                    .with("degree", static_cast<std::int64_t>(poly.size() - 1)));
  return out;
}

std::vector<BoundReport> joint_trial(std::mt19937_64& rng, std::size_t max_n) {
  JointBinary joint = random_joint_binary(rng, max_n);
  while (joint_oracle_summary(joint).sum_law.mean() <= 0.0) {
    joint = random_joint_binary(rng, max_n);
  }
  std::vector<BoundReport> out;
  out.push_back(prop1_report(joint));

  // Entropy gap equals D(joint || product of marginals).
  const JointSummary summary = joint_oracle_summary(joint);
  const JointBinary product = JointBinary::independent(summary.means);
  // Summed atom by atom: 2^20 atoms would exceed the Pmf support cap.
  CompensatedSum divergence;
  for (std::size_t mask = 0; mask < joint.atoms().size(); ++mask) {
    const double a = joint.atoms()[mask];
    if (a > 0.0) divergence += a * (std::log(a) - std::log(product.atom(mask)));
  }
  out.push_back(identity_report("entropy_gap_identity", summary.entropy_gap(),
                                divergence.value(),
                                kPinskerTol));
  return out;
}

std::vector<BoundReport> geometric_trial(std::mt19937_64& rng, std::size_t max_n,
                                         double tail_eps) {
  const std::vector<double> qs = random_geometric_list(rng, max_n);
  std::vector<Pmf> parts;
  for (double q : qs) parts.push_back(pmf_geometric(q, tail_eps));
  const Pmf sum = sum_independent(parts);
  const double lambda = sum.mean();

  std::vector<BoundReport> out;
  out.push_back(subadditivity_report(parts));
  out.push_back(cramer_rao_report(sum));
  out.push_back(prop2_report(sum));
  out.push_back(tvbound_report(sum));

  CompensatedSum cubes;
  for (double q : qs) cubes += std::pow(1.0 - q, 3.0) / (q * q);
  out.push_back(BoundReport::make("example3_tv",
                                  total_variation(sum, PoissonLaw(lambda)),
                                  std::sqrt(2.0 / lambda * cubes.value()),
                                  kInequalityTol)
                    .with("lambda", lambda)
                    .with("qs", qs));

  // Equal q_i = n/(n + lambda) attains the subadditive combination.
  const auto n = static_cast<double>(qs.size());
  const double target = uniform(rng, 0.1, 3.0);
  const double q_eq = n / (n + target);
  const std::vector<Pmf> equal(qs.size(), pmf_geometric(q_eq, tail_eps));
  const Pmf equal_sum = sum_independent(equal);
  out.push_back(identity_report("example3_equality", scaled_fisher_info(equal_sum),
                                scaled_fisher_info(equal.front()), kIdentityTol));
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  return kFamilyNames[static_cast<std::size_t>(f)];
}

std::optional<Family> parse_family(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kFamilyNames); ++i) {
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  }
  return std::nullopt;
}

std::size_t CampaignConfig::effective_max_n() const {
  if (max_n != 0) return max_n;
  switch (family) {
    case Family::BernoulliLists: return 50;
    case Family::RandomPmf: return 30;
    case Family::JointBinaryFamily: return 12;
    case Family::GeometricLists: return 6;
  }
  return 1;
}

void CampaignConfig::validate() const {
  if (trials == 0) throw ConfigError("trials must be >= 1");
  const std::size_t n = effective_max_n();
  switch (family) {
    case Family::BernoulliLists:
      if (n > 2000) throw ConfigError("bernoulli-lists: max_n must be <= 2000");
      break;
    case Family::RandomPmf:
      if (n < 2 || n > 1000) throw ConfigError("random-pmf: max_n must lie in [2, 1000]");
      break;
    case Family::JointBinaryFamily:
      if (n > kMaxJointCoordinates) throw ConfigError("joint-binary: max_n must be <= 20");
      break;
    case Family::GeometricLists:
      if (n > 200) throw ConfigError("geometric-lists: max_n must be <= 200");
      break;
  }
  if (!(tail_eps > 0.0 && tail_eps <= 1e-6)) {
    throw ConfigError("tail_eps must lie in (0, 1e-6]");
  }
  if (tol_override) {
    if (!(*tol_override >= 0.0)) throw ConfigError("tolerance override must be >= 0");
    if (*tol_override > minimal_default_tolerance(family) && !unsafe) {
      throw ConfigError(fmt::format(
          "tolerance override {} loosens the default {}; pass --unsafe to allow",
          *tol_override, minimal_default_tolerance(family)));
    }
  }
}

std::uint64_t trial_seed(std::uint64_t campaign_seed, std::size_t trial) {
  std::uint64_t z = campaign_seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<BoundReport> run_trial(const CampaignConfig& config, std::size_t trial) {
  std::mt19937_64 rng(trial_seed(config.seed, trial));
  const std::size_t n = config.effective_max_n();
  std::vector<BoundReport> out;
  try {
    switch (config.family) {
      case Family::BernoulliLists: out = bernoulli_trial(rng, n); break;
      case Family::RandomPmf: out = random_pmf_trial(rng, n); break;
      case Family::JointBinaryFamily: out = joint_trial(rng, n); break;
      case Family::GeometricLists: out = geometric_trial(rng, n, config.tail_eps); break;
    }
  } catch (const std::exception& e) {
    BoundReport err = BoundReport::make("trial_error", 1.0, 0.0, 0.0);
    err.with("message", std::string(e.what()));
    out.push_back(std::move(err));
    return out;
  }
  if (config.tol_override) {
    for (auto& r : out) r.retolerate(*config.tol_override);
  }
  return out;
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  config.validate();
  const std::size_t trials = config.trials;
  std::vector<std::vector<BoundReport>> results(trials);
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(trials, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < trials; i += workers) {
          results[i] = run_trial(config, i);
        }
      });
    }
  }
  CampaignSummary summary;
  summary.config = config;
  for (std::size_t i = 0; i < trials; ++i) {
    for (auto& r : results[i]) {
      ++summary.reports;
      ++summary.reports_by_name[r.name];
      if (!r.holds) {
        summary.failures.push_back({i, trial_seed(config.seed, i), std::move(r)});
      }
    }
  }
  return summary;
}

std::string summary_to_json(const CampaignSummary& s) {
  std::string out = "{\n";
  out += fmt::format("  \"family\": {},\n", json_quote(family_name(s.config.family)));
  out += fmt::format("  \"seed\": {},\n", s.config.seed);
  out += fmt::format("  \"trials\": {},\n", s.config.trials);
  out += fmt::format("  \"max_n\": {},\n", s.config.effective_max_n());
  out += fmt::format("  \"tail_eps\": {},\n", format_number(s.config.tail_eps));
  out += fmt::format("  \"reports\": {},\n", s.reports);
  out += "  \"reports_by_name\": {";
  bool first = true;
  for (const auto& [name, count] : s.reports_by_name) {
    out += fmt::format("{}{}: {}", first ? "" : ", ", json_quote(name), count);
    first = false;
  }
  out += "},\n";
  out += fmt::format("  \"failure_count\": {},\n", s.failures.size());
  out += "  \"failures\": [";
  for (std::size_t i = 0; i < s.failures.size(); ++i) {
    const auto& f = s.failures[i];
    out += fmt::format("{}\n    {{\"trial\": {}, \"trial_seed\": {}, \"report\": {}}}",
                       i ? "," : "", f.trial, f.trial_seed, to_json(f.report));
  }
  out += s.failures.empty() ? "],\n" : "\n  ],\n";
  out += fmt::format("  \"passed\": {}\n}}", s.passed() ? "true" : "false");
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::vector<double> random_bernoulli_list(std::mt19937_64& rng, std::size_t max_n,
                                          double max_p) {
  const std::size_t n = uniform_index(rng, 1, std::max<std::size_t>(max_n, 1));
  std::vector<double> ps(n);
  for (double& p : ps) p = uniform(rng, 0.0, max_p);
  return ps;
}

Pmf random_full_support_pmf(std::mt19937_64& rng, std::size_t min_len,
                            std::size_t max_len) {
  const std::size_t len = uniform_index(rng, min_len, max_len);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(len);
  CompensatedSum total;
  for (double& x : w) {
    x = expo(rng) + 1e-12;
    total += x;
  }
  const double t = total.value();
  for (double& x : w) x /= t;
  return Pmf::from_probs(std::move(w));
}

JointBinary random_joint_binary(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = uniform_index(rng, 1, max_n);
  const std::size_t count = std::size_t{1} << n;
  switch (uniform_index(rng, 0, 3)) {
    case 0: {
      std::vector<double> ps(n);
      for (double& p : ps) p = uniform(rng, 0.0, 0.5);
      return JointBinary::independent(ps);
    }
    case 1: {
      MarkovChainSpec spec;
      spec.n = n;
      const double a = uniform(rng, 0.0, 0.5);
      const double b = uniform(rng, 0.0, 1.0);
      spec.transition = {{{1.0 - a, a}, {1.0 - b, b}}};
      spec.initial = uniform(rng, 0.0, 0.5);
      return joint_from_markov(spec);
    }
    case 2: {
      // Sparse Dirichlet-like weights: exponentials raised to a large power.
      const double power = uniform(rng, 1.0, 6.0);
      std::exponential_distribution<double> expo(1.0);
      std::vector<double> atoms(count);
      CompensatedSum total;
      for (double& a : atoms) {
        a = std::pow(expo(rng), power);
        total += a;
      }
      for (double& a : atoms) a /= total.value();
      return JointBinary(n, std::move(atoms));
    }
    default: {
      std::vector<double> p1(n);
      std::vector<double> p2(n);
      for (double& p : p1) p = uniform(rng, 0.0, 0.3);
      for (double& p : p2) p = uniform(rng, 0.0, 0.3);
      const double w = uniform(rng, 0.0, 1.0);
      const JointBinary a = JointBinary::independent(p1);
      const JointBinary b = JointBinary::independent(p2);
      std::vector<double> atoms(count);
      for (std::size_t m = 0; m < count; ++m) {
        atoms[m] = w * a.atom(m) + (1.0 - w) * b.atom(m);
      }
      return JointBinary(n, std::move(atoms));
    }
  }
}

std::vector<double> random_geometric_list(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = uniform_index(rng, 1, max_n);
  std::vector<double> qs(n);
  for (double& q : qs) q = uniform(rng, 0.2, 1.0);
  return qs;
}

std::vector<double> random_polynomial(std::mt19937_64& rng, std::size_t max_degree) {
  const std::size_t degree = uniform_index(rng, 0, max_degree);
  std::vector<double> c(degree + 1);
  for (double& x : c) x = uniform(rng, -1.0, 1.0);
  return c;
}

double eval_polynomial(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace smallnum
