#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "smallnum/campaign.hpp"
#include "smallnum/scaled_fisher.hpp"
#include "smallnum/sum_engines.hpp"

using namespace smallnum;

namespace {

// K = lambda E[rho^2] summed directly from the definition.
double fisher_direct(const Pmf& p) {
  const double lambda = p.mean();
  double k = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0) continue;
    const double rho = static_cast<double>(x + 1) * p[x + 1] / (lambda * p[x]) - 1.0;
    k += p[x] * rho * rho;
  }
  return lambda * k;
}

Pmf binomial(std::size_t n, double p) {
  return sum_independent(std::vector<Pmf>(n, pmf_bernoulli(p)));
}

}  // namespace

TEST(ScaledScore, GeometricScoreIsAffine) {
  // For Geom(q): (x+1)P(x+1)/(lambda P(x)) = (x+1) q, so rho(x) = (x+1)q - 1.
  const double q = 0.4;
  const Pmf g = pmf_geometric(q);
  const ScoreProfile s = scaled_score(g);
  EXPECT_NEAR(s.lambda, (1 - q) / q, 1e-10);
  for (std::size_t x = 0; x + 1 < g.size(); ++x) {
    ASSERT_TRUE(s.scores[x].has_value());
    EXPECT_NEAR(*s.scores[x], static_cast<double>(x + 1) * q - 1.0, 1e-9);
  }
  EXPECT_NEAR(s.mean_under(g), 0.0, 1e-9);
}

TEST(ScaledScore, UndefinedOffSupportAndDegenerateRejected) {
  const Pmf p = Pmf::from_probs({0.5, 0.0, 0.5});
  const ScoreProfile s = scaled_score(p);
  EXPECT_FALSE(s.scores[1].has_value());
  EXPECT_THROW(scaled_score(Pmf::point_mass(0)), std::invalid_argument);
}

TEST(ScaledFisher, Examples) {
  EXPECT_LE(scaled_fisher_info(pmf_poisson_truncated(3.0)), 1e-8);
  EXPECT_NEAR(scaled_fisher_info(pmf_bernoulli(0.1)), 0.01 / 0.9, 1e-15);
  EXPECT_NEAR(scaled_fisher_info(pmf_geometric(0.5)), 0.5, 1e-9);
  const Pmf r = Pmf::from_probs({0.1, 0.4, 0.2, 0.3});
  EXPECT_NEAR(scaled_fisher_info(r), fisher_direct(r), 1e-14);
  EXPECT_NEAR(scaled_fisher_info(scaled_score(r), r), fisher_direct(r), 1e-14);
}

TEST(CramerRao, Examples) {
  EXPECT_EQ(cramer_rao_lower(2.0, 2.0), 0.0);
  EXPECT_NEAR(cramer_rao_lower(1.0, 2.0), 0.5, 1e-15);
  EXPECT_NEAR(cramer_rao_lower(1.0, 0.75), 0.25 * 0.25 / 0.75, 1e-15);
  const Pmf b = binomial(4, 0.25);
  EXPECT_NEAR(scaled_fisher_info(b), cramer_rao_lower(b.mean(), b.variance()), 1e-12);
  EXPECT_NEAR(scaled_fisher_info(b), 0.25 * 0.25 / 0.75, 1e-12);
}

TEST(SubadditiveCombination, Examples) {
  const MeanAndFisher one[] = {{0.7, 0.3}};
  EXPECT_DOUBLE_EQ(subadditive_combination(one), 0.3);
  const std::vector<MeanAndFisher> iid(5, {0.2, 0.05});
  EXPECT_NEAR(subadditive_combination(iid), 0.05, 1e-16);
  EXPECT_THROW(subadditive_combination(std::vector<MeanAndFisher>{}), std::invalid_argument);
}

TEST(ConvolutionLemma, Examples) {
  EXPECT_LE(convolution_lemma_residual(pmf_bernoulli(0.3), pmf_bernoulli(0.3)), 1e-10);
  EXPECT_LE(convolution_lemma_residual(pmf_bernoulli(0.2), pmf_geometric(0.5)), 1e-8);
  EXPECT_THROW(convolution_lemma_residual(pmf_bernoulli(0.2), Pmf::point_mass(0)),
               std::invalid_argument);
}

TEST(ConvolutionLemma, HoldsOnRandomPairs) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const Pmf p = random_full_support_pmf(rng, 2, 10);
    const Pmf q = random_full_support_pmf(rng, 2, 10);
    EXPECT_LE(convolution_lemma_residual(p, q), 1e-8);
  }
}

TEST(Subadditivity, HoldsOnRandomLists) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 500; ++i) {
    std::uniform_int_distribution<std::size_t> len(1, 5);
    std::vector<Pmf> parts;
    std::vector<MeanAndFisher> mf;
    for (std::size_t k = len(rng); k > 0; --k) {
      parts.push_back(random_full_support_pmf(rng, 2, 6));
      mf.push_back({parts.back().mean(), scaled_fisher_info(parts.back())});
    }
    EXPECT_LE(scaled_fisher_info(sum_independent(parts)), subadditive_combination(mf) + 1e-9);
  }
}

TEST(NegativeBinomial, FisherMatchesClosedForm) {
  for (std::size_t n : {1u, 3u, 8u}) {
    const double q = 0.6;
    const Pmf nb = sum_independent(std::vector<Pmf>(n, pmf_geometric(q)));
    EXPECT_NEAR(scaled_fisher_info(nb), (1 - q) * (1 - q) / q, 1e-8);
  }
}
