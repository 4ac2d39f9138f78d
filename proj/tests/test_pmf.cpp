#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "smallnum/numeric.hpp"
#include "smallnum/pmf.hpp"

using namespace smallnum;

namespace {

double sum_of(const Pmf& p) {
  return std::accumulate(p.probs().begin(), p.probs().end(), 0.0);
}

}  // namespace

TEST(CompensatedSum, RecoversSmallTermsNextToLargeOnes) {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-17;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-14, 1e-20);
}

TEST(LogAdd, HandlesNegativeInfinity) {
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(log_add(ninf, ninf), ninf);
  EXPECT_DOUBLE_EQ(log_add(ninf, 0.5), 0.5);
  EXPECT_NEAR(log_add(std::log(0.25), std::log(0.5)), std::log(0.75), 1e-15);
}

TEST(Pmf, FromProbsValidates) {
  EXPECT_THROW(Pmf::from_probs({}), std::invalid_argument);
  EXPECT_THROW(Pmf::from_probs({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Pmf::from_probs({1.2, -0.2}), std::invalid_argument);
  EXPECT_THROW(Pmf::from_probs({0.5, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(Pmf::from_probs({0.5, 0.5}, -1e-3), std::invalid_argument);
  EXPECT_NO_THROW(Pmf::from_probs({0.5, 0.5 - 1e-9}, 1e-9));
}

TEST(Pmf, OutOfSupportIsZero) {
  const Pmf p = pmf_bernoulli(0.5);
  EXPECT_EQ(p[7], 0.0);
  EXPECT_EQ(p.log_pmf(7), -std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(p.mass_above(0), 0.5);
  EXPECT_DOUBLE_EQ(p.mass_above(5), 0.0);
}

TEST(Bernoulli, Examples) {
  const Pmf zero = pmf_bernoulli(0.0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], 1.0);

  const Pmf half = pmf_bernoulli(0.5);
  ASSERT_EQ(half.size(), 2u);
  EXPECT_EQ(half[0], 0.5);
  EXPECT_EQ(half[1], 0.5);

  const Pmf tenth = pmf_bernoulli(0.1);
  EXPECT_NEAR(tenth.mean(), 0.1, 1e-15);
  EXPECT_NEAR(tenth.variance(), 0.09, 1e-15);

  EXPECT_NEAR(pmf_bernoulli(0.3).mean(), 0.3, 1e-15);
}

TEST(Bernoulli, RejectsOutOfRange) {
  EXPECT_THROW(pmf_bernoulli(-0.1), std::invalid_argument);
  EXPECT_THROW(pmf_bernoulli(1.1), std::invalid_argument);
  EXPECT_THROW(pmf_bernoulli(std::nan("")), std::invalid_argument);
}

TEST(PoissonTruncated, Examples) {
  const Pmf p = pmf_poisson_truncated(1.0, 1e-12);
  EXPECT_NEAR(p[0], 0.3678794412, 1e-10);
  EXPECT_GE(sum_of(p), 1.0 - 1e-12);
  EXPECT_LE(p.tail(), 1e-12);

  const Pmf half = pmf_poisson_truncated(0.5);
  EXPECT_NEAR(half[1] / half[0], 0.5, 1e-14);

  EXPECT_NEAR(pmf_poisson_truncated(2.0).mean(), 2.0, 1e-9);
}

TEST(PoissonTruncated, RejectsBadArguments) {
  EXPECT_THROW(pmf_poisson_truncated(0.0), std::invalid_argument);
  EXPECT_THROW(pmf_poisson_truncated(-1.0), std::invalid_argument);
  EXPECT_THROW(pmf_poisson_truncated(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(pmf_poisson_truncated(1.0, 1e-3), std::invalid_argument);
}

TEST(PoissonLaw, MatchesRecurrenceOverWideRange) {
  // Oracle: forward recurrence P(k+1) = P(k) lambda/(k+1) from e^{-lambda}.
  for (double lambda : {0.01, 0.7, 3.0, 17.5, 80.0}) {
    const PoissonLaw law(lambda);
    double pk = std::exp(-lambda);
    for (std::size_t k = 0; k < 200; ++k) {
      if (pk > 1e-280) EXPECT_NEAR(law.pmf(k) / pk, 1.0, 1e-12) << lambda << " " << k;
      pk *= lambda / static_cast<double>(k + 1);
    }
  }
}

TEST(PoissonLaw, MassAboveMatchesDirectSum) {
  for (double lambda : {0.3, 2.0, 25.0}) {
    const PoissonLaw law(lambda);
    for (std::size_t k : {0u, 1u, 3u, 10u, 40u}) {
      CompensatedSum s;
      for (std::size_t j = k + 1; j < 400; ++j) s += law.pmf(j);
      EXPECT_NEAR(law.mass_above(k), s.value(), 1e-14 + 1e-12 * s.value());
    }
  }
}

TEST(PoissonTruncated, LargeRatesStayNormalized) {
  for (double lambda : {50.0, 400.0, 5000.0}) {
    const Pmf p = pmf_poisson_truncated(lambda);
    EXPECT_NEAR(sum_of(p) + p.tail(), 1.0, 1e-12);
    EXPECT_NEAR(p.mean(), lambda, 1e-8 * lambda);
    EXPECT_NEAR(p.variance(), lambda, 1e-7 * lambda);
  }
}

TEST(PoissonHorizon, IsTheSmallestAdequateIndex) {
  for (double lambda : {0.2, 1.0, 9.0, 60.0}) {
    for (double eps : {1e-8, 1e-12, 1e-16}) {
      const PoissonLaw law(lambda);
      const std::size_t k = poisson_horizon(lambda, eps);
      EXPECT_LE(law.mass_above(k), eps);
      if (k > static_cast<std::size_t>(std::ceil(lambda))) {
        EXPECT_GT(law.mass_above(k - 1), eps);
      }
    }
  }
}

TEST(Geometric, Examples) {
  const Pmf one = pmf_geometric(1.0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], 1.0);

  const Pmf half = pmf_geometric(0.5);
  EXPECT_DOUBLE_EQ(half[0], 0.5);
  EXPECT_DOUBLE_EQ(half[1], 0.25);
  EXPECT_DOUBLE_EQ(half[2], 0.125);
  EXPECT_NEAR(half.mean(), 1.0, 1e-9);
  EXPECT_NEAR(half.variance(), 2.0, 1e-9);
  EXPECT_LE(half.tail(), 1e-12);
  EXPECT_NEAR(sum_of(half) + half.tail(), 1.0, 1e-15);
}

TEST(Geometric, RejectsZeroAndOutOfRange) {
  EXPECT_THROW(pmf_geometric(0.0), std::invalid_argument);
  EXPECT_THROW(pmf_geometric(1.5), std::invalid_argument);
  EXPECT_THROW(pmf_geometric(0.5, 0.0), std::invalid_argument);
}

TEST(CompoundPoisson, Examples) {
  const Pmf pure = pmf_compound_poisson(CompoundPoissonLaw(1.0, 0.0));
  const Pmf po = pmf_poisson_truncated(1.0);
  for (std::size_t k = 0; k < po.size(); ++k) EXPECT_NEAR(pure[k], po[k], 1e-15);

  const Pmf mixed = pmf_compound_poisson(CompoundPoissonLaw(0.5, 0.5));
  EXPECT_NEAR(mixed.mean(), 1.5, 1e-9);
  EXPECT_NEAR(mixed[1], 0.5 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(mixed[1], 0.1839397, 1e-7);
}

TEST(CompoundPoisson, PointwiseMatchesMaterialized) {
  const CompoundPoissonLaw law(0.7, 1.3);
  const Pmf m = pmf_compound_poisson(law);
  // The materialized law is exact up to its truncation budget.
  for (std::size_t k = 0; k < m.size(); ++k) {
    EXPECT_NEAR(law.pmf(k), m[k], 1e-12);
  }
  EXPECT_NEAR(m.mean(), 0.7 + 2 * 1.3, 1e-15);
  EXPECT_NEAR(m.variance(), 0.7 + 4 * 1.3, 1e-15);
  EXPECT_NEAR(law.mass_above(3), m.mass_above(3), 1e-12);
  // Oracle for k = 2: Z1 = 2, Z2 = 0 or Z1 = 0, Z2 = 1.
  const double e = std::exp(-2.0);
  EXPECT_NEAR(law.pmf(2), e * (0.7 * 0.7 / 2.0 + 1.3), 1e-15);
}

TEST(CompoundPoisson, PointwiseMatchesDecompositionSum) {
  // P(k) = e^{-(l1+l2)} sum_j l1^(k-2j)/(k-2j)! l2^j/j!.
  const double l1 = 0.7, l2 = 1.3;
  const CompoundPoissonLaw law(l1, l2);
  for (std::size_t k : {0u, 1u, 5u, 12u, 20u, 30u}) {
    double s = 0.0;
    for (std::size_t j = 0; 2 * j <= k; ++j) {
      const std::size_t i = k - 2 * j;
      s += std::pow(l1, static_cast<double>(i)) / std::tgamma(static_cast<double>(i) + 1) *
           std::pow(l2, static_cast<double>(j)) / std::tgamma(static_cast<double>(j) + 1);
    }
    s *= std::exp(-(l1 + l2));
    EXPECT_NEAR(law.pmf(k) / s, 1.0, 1e-13) << k;
  }
}

TEST(CompoundPoisson, RejectsBadRates) {
  EXPECT_THROW(CompoundPoissonLaw(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(CompoundPoissonLaw(0.0, 0.0), std::invalid_argument);
}
