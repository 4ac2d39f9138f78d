#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "smallnum/bound_suite.hpp"
#include "smallnum/campaign.hpp"
#include "smallnum/info_metrics.hpp"
#include "smallnum/scaled_fisher.hpp"
#include "smallnum/sum_engines.hpp"

using namespace smallnum;

namespace {

double h(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

Pmf binomial(std::size_t n, double p) {
  return sum_independent(std::vector<Pmf>(n, pmf_bernoulli(p)));
}

}  // namespace

TEST(BoundReport, HoldsAndSlack) {
  const BoundReport r = BoundReport::make("x", 1.0, 2.0, 1e-9);
  EXPECT_TRUE(r.holds);
  EXPECT_DOUBLE_EQ(r.slack, 1.0);
  EXPECT_FALSE(BoundReport::make("x", 2.0, 1.0, 1e-9).holds);
  EXPECT_TRUE(BoundReport::make("x", 1.0 + 1e-10, 1.0, 1e-9).holds);
  const BoundReport c = BoundReport::make_chain("c", 1.0, 3.0, 2.0, 1e-9);
  EXPECT_FALSE(c.holds);
}

TEST(BoundReport, JsonAndCsvUseFullPrecision) {
  BoundReport r = BoundReport::make("name", 0.1, 1.0 / 3.0, 1e-9);
  r.with("n", std::int64_t{3}).with("ps", std::vector<double>{0.5});
  const std::string js = to_json(r);
  EXPECT_NE(js.find("0.33333333333333331"), std::string::npos);
  EXPECT_NE(js.find("\"n\": 3"), std::string::npos);
  EXPECT_EQ(csv_header(), "name,lhs,rhs,slack,holds,tolerance,params");
  EXPECT_NE(to_csv_row(r).find("0.10000000000000001"), std::string::npos);
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "\"inf\"");
  EXPECT_EQ(json_quote("a\"b"), "\"a\\\"b\"");
  EXPECT_DOUBLE_EQ(r.param_number("n"), 3.0);
  EXPECT_EQ(r.param("missing"), nullptr);
}

TEST(Prop1, Examples) {
  const std::vector<double> ps(5, 0.1);
  const BoundReport ind = prop1_independent_report(ps);
  EXPECT_NEAR(ind.rhs, 0.05, 1e-15);
  EXPECT_TRUE(ind.holds);

  const BoundReport viajoint = prop1_report(JointBinary::independent(ps));
  EXPECT_NEAR(viajoint.rhs, 0.05, 1e-12);
  EXPECT_NEAR(viajoint.lhs, ind.lhs, 1e-13);

  const BoundReport dup = prop1_report(JointBinary(2, {0.7, 0.0, 0.0, 0.3}));
  EXPECT_NEAR(dup.rhs, 0.18 + h(0.3), 1e-13);
  EXPECT_NEAR(dup.rhs, 0.7909, 1e-4);
  // Oracle: the sum takes values 0 and 2 with weights 0.7 and 0.3.
  const double e = std::exp(-0.6);
  const double d = 0.7 * std::log(0.7 / e) + 0.3 * std::log(0.3 / (e * 0.18));
  EXPECT_NEAR(dup.lhs, d, 1e-14);
  EXPECT_NEAR(dup.lhs, 0.5034, 5e-4);
  EXPECT_TRUE(dup.holds);

  EXPECT_THROW(prop1_independent_report(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(Theorem1, Examples) {
  const std::vector<double> ps(100, 0.01);
  const BoundReport r = theorem1_report(ps);
  EXPECT_NEAR(r.rhs, 100 * 1e-6 / 0.99, 1e-15);
  EXPECT_TRUE(r.holds);

  const std::vector<double> single{0.2};
  const BoundReport s = theorem1_report(single);
  EXPECT_NEAR(s.rhs, 0.05, 1e-15);
  EXPECT_NEAR(s.lhs, 0.2 + 0.8 * std::log(0.8), 1e-15);
  EXPECT_NEAR(s.lhs, 0.02149, 1e-5);
  EXPECT_TRUE(s.holds);

  EXPECT_THROW(theorem1_report(std::vector<double>{0.3, 1.0}), std::invalid_argument);
}

TEST(Theorem1, ProofChainOnRandomLists) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto ps = random_bernoulli_list(rng, 30, 0.5);
    for (const auto& r : theorem1_proof_chain(ps)) EXPECT_TRUE(r.holds) << to_json(r);
  }
}

TEST(LeCam, Conventions) {
  const auto one = lecam_report(std::vector<double>{0.5});
  EXPECT_EQ(one[0].name, "lecam_l1");
  EXPECT_NEAR(one[0].lhs, 0.3935, 1e-4);
  EXPECT_NEAR(one[0].rhs, 0.25, 1e-15);
  EXPECT_FALSE(one[0].holds);
  EXPECT_TRUE(one[1].holds);

  const auto zero = lecam_report(std::vector<double>{0.0, 0.0});
  EXPECT_EQ(zero[0].lhs, 0.0);
  EXPECT_EQ(zero[0].rhs, 0.0);
  EXPECT_TRUE(zero[0].holds);

  const auto hundred = lecam_report(std::vector<double>(100, 0.01));
  EXPECT_NEAR(hundred[0].rhs, 0.01, 1e-15);
  EXPECT_TRUE(hundred[0].holds);
  EXPECT_TRUE(hundred[1].holds);
}

TEST(Prop2, Examples) {
  const BoundReport po = prop2_report(pmf_poisson_truncated(2.0));
  EXPECT_LE(po.lhs, 1e-8);
  EXPECT_LE(po.rhs, 1e-8);
  EXPECT_TRUE(po.holds);

  const BoundReport b = prop2_report(pmf_bernoulli(0.1));
  EXPECT_NEAR(b.lhs, 0.0051755, 1e-7);
  EXPECT_NEAR(b.rhs, 0.0111111, 1e-7);
  EXPECT_TRUE(b.holds);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(prop2_report(random_full_support_pmf(rng, 6, 6)).holds);
  }
}

TEST(TvBound, Examples) {
  const BoundReport po = tvbound_report(pmf_poisson_truncated(1.0));
  EXPECT_LE(po.lhs, 1e-6);
  EXPECT_TRUE(po.holds);

  const BoundReport b = tvbound_report(pmf_bernoulli(0.1));
  EXPECT_NEAR(b.rhs, std::sqrt(2.0 * 0.01 / 0.9), 1e-12);
  EXPECT_NEAR(b.rhs, 0.1491, 1e-4);
  EXPECT_NEAR(b.lhs, total_variation(pmf_bernoulli(0.1), PoissonLaw(0.1)), 1e-15);
  EXPECT_TRUE(b.holds);

  const BoundReport g = tvbound_report(pmf_geometric(0.9));
  EXPECT_TRUE(g.holds);
  EXPECT_GT(g.slack, 0.0);
}

TEST(HellingerChain, HoldsAndRespectsBernoulliBound) {
  const BoundReport r = hellinger_chain_report(pmf_bernoulli(0.1));
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.lhs, 2.0 * 0.01 / 0.9);
  ASSERT_TRUE(r.intermediate.has_value());
}

TEST(CramerRaoReport, EqualityForBinomial) {
  const BoundReport r = cramer_rao_report(binomial(4, 0.25));
  EXPECT_NEAR(r.lhs, r.rhs, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(Pinsker, Report) {
  const BoundReport r = pinsker_report(pmf_bernoulli(0.3), pmf_bernoulli(0.6));
  EXPECT_TRUE(r.holds);
}

TEST(Poincare, Examples) {
  const BoundReport c = poincare_check(1.5, [](std::size_t) { return 4.0; }, 80);
  EXPECT_NEAR(c.lhs, 0.0, 1e-14);
  EXPECT_NEAR(c.rhs, 0.0, 1e-14);
  EXPECT_TRUE(c.holds);

  const BoundReport lin =
      poincare_check(2.0, [](std::size_t x) { return static_cast<double>(x); }, 80);
  EXPECT_NEAR(lin.lhs, 2.0, 1e-12);
  EXPECT_NEAR(lin.rhs, 2.0, 1e-12);
  EXPECT_TRUE(lin.holds);

  // Po(1): E X^2 = 2, E X^4 = 15, so Var(X^2) = 11; E(2X+1)^2 = 4*2 + 4 + 1 = 13.
  const BoundReport sq = poincare_check(
      1.0, [](std::size_t x) { return static_cast<double>(x * x); }, 80);
  EXPECT_NEAR(sq.lhs, 11.0, 1e-10);
  EXPECT_NEAR(sq.rhs, 13.0, 1e-10);
  EXPECT_TRUE(sq.holds);
}

TEST(MarkovExample, Examples) {
  const BoundReport three = markov_example_report(3);
  EXPECT_TRUE(three.holds);
  ASSERT_TRUE(three.intermediate.has_value());
  EXPECT_LE(three.lhs, *three.intermediate);

  const BoundReport hundred = markov_example_report(100);
  EXPECT_NEAR(hundred.rhs, 3.0 * std::log(100.0) / 100 + 0.01, 1e-15);
  EXPECT_NEAR(hundred.rhs, 0.148155, 1e-6);
  EXPECT_TRUE(hundred.holds);

  const BoundReport thousand = markov_example_report(1000);
  EXPECT_NEAR(thousand.rhs, 0.0217233, 1e-7);
  EXPECT_TRUE(thousand.holds);

  EXPECT_THROW(markov_example_report(2), std::invalid_argument);
}

TEST(MarkovExample, ClosedFormMatchesPairLaw) {
  for (std::size_t n : {3u, 5u, 12u}) {
    const JointBinary chain = joint_from_markov(markov_spec_paper(n));
    const std::size_t a[] = {0}, b[] = {1};
    EXPECT_NEAR(markov_mi_closed_form(n),
                static_cast<double>(n - 1) * mutual_information(chain, a, b), 1e-13);
  }
}

TEST(CompoundExample, Examples) {
  const auto zero = compound_example_report(std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(zero.front().lhs, 0.0, 1e-10);
  EXPECT_TRUE(zero.front().holds);

  const auto single = compound_example_report(std::vector<double>{0.4});
  ASSERT_EQ(single.size(), 2u);
  EXPECT_LE(single[1].lhs, 0.16);
  EXPECT_TRUE(single[1].holds);

  const auto ten = compound_example_report(std::vector<double>(10, 0.1));
  EXPECT_EQ(ten.front().name, "compound_total");
  EXPECT_NEAR(ten.front().rhs, 0.1, 1e-15);
  for (const auto& r : ten) EXPECT_TRUE(r.holds);
}

TEST(CompoundExample, TermDivergenceMatchesPointwiseSum) {
  for (double p : {0.05, 0.1, 0.4, 0.8}) {
    const Pmf term = compound_sum_distribution(std::vector<double>{p});
    const double direct = relative_entropy(term, CompoundPoissonLaw(p / 2, p / 2)).value;
    EXPECT_NEAR(compound_term_divergence(p), direct, 1e-14);
    EXPECT_LE(direct, p * p);
  }
}

TEST(DeBruijn, Examples) {
  QuadratureSpec quad = default_quadrature(1.0);
  const auto po = debruijn_identity_report(pmf_poisson_truncated(1.0), quad);
  EXPECT_LE(po.divergence, 1e-6);
  EXPECT_LE(po.integral, 1e-6);
  EXPECT_TRUE(po.report.holds);

  quad.t_max = 200.0;
  quad.abs_tol = 1e-5;
  const auto bern = debruijn_identity_report(pmf_bernoulli(0.5), quad);
  EXPECT_LE(std::fabs(bern.integral - bern.divergence), 1e-4);
  EXPECT_TRUE(bern.report.holds);
  EXPECT_GT(bern.tail_estimate, 0.0);

  const Pmf b5 = binomial(5, 0.2);
  const auto bin = debruijn_identity_report(b5, default_quadrature(b5.mean()));
  EXPECT_LE(std::fabs(bin.integral - bin.divergence), 1e-4);
  EXPECT_LE(bin.max_normalization_error, 1e-10);
}

TEST(DeBruijn, RejectsDegenerateMean) {
  EXPECT_THROW(debruijn_identity_report(Pmf::point_mass(0), default_quadrature(0.0)),
               std::invalid_argument);
}

TEST(DeBruijn, DiagnosticIsFinite) {
  const auto po = debruijn_diagnostic(pmf_poisson_truncated(1.0), default_quadrature(1.0));
  EXPECT_LE(po.approximation, 1e-6);
  const auto b = debruijn_diagnostic(pmf_bernoulli(0.3), default_quadrature(0.3));
  EXPECT_TRUE(std::isfinite(b.approximation));
  EXPECT_GT(b.approximation, 0.0);
  EXPECT_NEAR(b.divergence, 0.3 + 0.7 * std::log(0.7), 1e-14);
  const Pmf b10 = binomial(10, 0.05);
  const auto r = debruijn_diagnostic(b10, default_quadrature(b10.mean()));
  EXPECT_GT(r.approximation / r.divergence, 0.0);
}

TEST(SmoothingDecay, Examples) {
  const double zero[] = {0.0};
  EXPECT_TRUE(smoothing_decay_check(pmf_bernoulli(0.5), zero)[0].holds);
  EXPECT_NEAR(smoothing_decay_check(pmf_bernoulli(0.5), zero)[0].lhs,
              smoothing_decay_check(pmf_bernoulli(0.5), zero)[0].rhs, 1e-12);

  const double half[] = {0.5};
  const auto b = smoothing_decay_check(pmf_bernoulli(0.5), half)[0];
  EXPECT_NEAR(b.rhs, 0.25, 1e-12);
  EXPECT_TRUE(b.holds);

  const double ts[] = {1.0, 10.0, 100.0};
  const auto g = smoothing_decay_check(pmf_geometric(0.5), ts);
  for (const auto& r : g) EXPECT_TRUE(r.holds);
  EXPECT_GT(g[0].lhs, g[1].lhs);
  EXPECT_GT(g[1].lhs, g[2].lhs);
}

TEST(BernoulliGap, Examples) {
  EXPECT_EQ(bernoulli_poisson_gap(0.0), 0.0);
  EXPECT_NEAR(bernoulli_poisson_gap(0.1), 0.0051755, 1e-7);
  EXPECT_NEAR(bernoulli_poisson_gap(0.9), 0.9 + 0.1 * std::log(0.1), 1e-15);
  EXPECT_NEAR(bernoulli_poisson_gap(0.9), 0.66974, 1e-5);
  EXPECT_TRUE(bernoulli_gap_report(0.9).holds);
  EXPECT_THROW(bernoulli_poisson_gap(1.0), std::invalid_argument);
}

TEST(Example1Rate, Arithmetic) {
  const BoundReport r = example1_rate_report(1.0, 100);
  EXPECT_NEAR(r.lhs, 0.01 * std::sqrt(2.0 / 0.99), 1e-15);
  EXPECT_NEAR(r.lhs, 0.014213, 1e-6);
  EXPECT_TRUE(r.holds);
}
