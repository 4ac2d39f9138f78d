#include "smallnum/bound_suite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smallnum/info_metrics.hpp"
#include "smallnum/numeric.hpp"
#include "smallnum/scaled_fisher.hpp"
#include "smallnum/sum_engines.hpp"

namespace smallnum {

namespace {

std::vector<double> to_vector(std::span<const double> xs) {
  return {xs.begin(), xs.end()};
}

void check_bernoulli_list(std::span<const double> ps, const char* who) {
  for (double p : ps) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument(std::string(who) + ": p_i must lie in [0, 1)");
    }
  }
}

double sum_of(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s += x;
  return s.value();
}

double sum_of_squares(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s += x * x;
  return s.value();
}

Pmf bernoulli_sum(std::span<const double> ps) {
  std::vector<Pmf> parts;
  parts.reserve(ps.size());
  for (double p : ps) parts.push_back(pmf_bernoulli(p));
  return sum_independent(parts);
}

double theorem1_bound(std::span<const double> ps, double lambda) {
  CompensatedSum s;
  for (double p : ps) s += p * p * p / (1.0 - p);
  return s.value() / lambda;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relative entropy bounds for sums of binaries

BoundReport prop1_report(const JointBinary& joint) {
  const JointSummary summary = joint_oracle_summary(joint);
  const double lambda = sum_of(summary.means);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("prop1_report: sum of means must be positive");
  }
  const double lhs = relative_entropy(summary.sum_law, PoissonLaw(lambda)).value;
  const double smallness = sum_of_squares(summary.means);
  const double gap = summary.entropy_gap();
  return BoundReport::make("prop1", lhs, smallness + gap, kInequalityTol)
      .with("n", static_cast<std::int64_t>(joint.n()))
      .with("lambda", lambda)
      .with("sum_p_squared", smallness)
      .with("entropy_gap", gap)
      .with("means", summary.means);
}

BoundReport prop1_independent_report(std::span<const double> ps) {
  check_bernoulli_list(ps, "prop1_independent_report");
  const double lambda = sum_of(ps);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("prop1_independent_report: lambda must be positive");
  }
  const double lhs = relative_entropy(bernoulli_sum(ps), PoissonLaw(lambda)).value;
  return BoundReport::make("prop1_independent", lhs, sum_of_squares(ps),
                           kInequalityTol)
      .with("n", static_cast<std::int64_t>(ps.size()))
      .with("lambda", lambda);
}

BoundReport theorem1_report(std::span<const double> ps) {
  check_bernoulli_list(ps, "theorem1_report");
  const double lambda = sum_of(ps);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("theorem1_report: lambda must be positive");
  }
  const Pmf law = bernoulli_sum(ps);
  const double lhs = relative_entropy(law, PoissonLaw(lambda)).value;
  const double rhs = theorem1_bound(ps, lambda);
  return BoundReport::make("theorem1", lhs, rhs, kInequalityTol)
      .with("n", static_cast<std::int64_t>(ps.size()))
      .with("lambda", lambda)
      .with("fisher_of_sum", scaled_fisher_info(law))
      .with("prop1_rhs", sum_of_squares(ps))
      .with("ps", to_vector(ps));
}

std::vector<BoundReport> theorem1_proof_chain(std::span<const double> ps) {
  check_bernoulli_list(ps, "theorem1_proof_chain");
  const double lambda = sum_of(ps);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("theorem1_proof_chain: lambda must be positive");
  }
  const Pmf law = bernoulli_sum(ps);
  const double divergence = relative_entropy(law, PoissonLaw(lambda)).value;
  const double fisher = scaled_fisher_info(law);

  std::vector<MeanAndFisher> parts;
  for (double p : ps) {
    if (p > 0.0) parts.push_back({p, scaled_fisher_info(pmf_bernoulli(p))});
  }
  const double combination = subadditive_combination(parts);
  const double closed_form = theorem1_bound(ps, lambda);

  const auto n = static_cast<std::int64_t>(ps.size());
  std::vector<BoundReport> out;
  out.push_back(BoundReport::make("theorem1_divergence_le_fisher", divergence,
                                  fisher, kInequalityTol)
                    .with("n", n)
                    .with("lambda", lambda));
  out.push_back(BoundReport::make("theorem1_fisher_le_bound", fisher,
                                  closed_form, kInequalityTol)
                    .with("n", n)
                    .with("lambda", lambda)
                    .with("subadditive_combination", combination));
  return out;
}

std::array<BoundReport, 2> lecam_report(std::span<const double> ps) {
  check_bernoulli_list(ps, "lecam_report");
  const double lambda = sum_of(ps);
  const double rhs = sum_of_squares(ps);
  double l1 = 0.0;
  if (lambda > 0.0) l1 = total_variation(bernoulli_sum(ps), PoissonLaw(lambda));
  const auto n = static_cast<std::int64_t>(ps.size());
  return {BoundReport::make("lecam_l1", l1, rhs, kInequalityTol)
              .with("convention", std::string("l1"))
              .with("n", n)
              .with("lambda", lambda),
          BoundReport::make("lecam_halved", 0.5 * l1, rhs, kInequalityTol)
              .with("convention", std::string("halved_l1"))
              .with("n", n)
              .with("lambda", lambda)};
}

// ---------------------------------------------------------------------------
// Scaled Fisher information bounds

BoundReport prop2_report(const Pmf& p) {
  const double lambda = p.mean();
  const double lhs = relative_entropy(p, PoissonLaw(lambda)).value;
  return BoundReport::make("prop2", lhs, scaled_fisher_info(p), kInequalityTol)
      .with("lambda", lambda)
      .with("support", static_cast<std::int64_t>(p.size()));
}

BoundReport tvbound_report(const Pmf& p) {
  const double lambda = p.mean();
  const double fisher = scaled_fisher_info(p);
  return BoundReport::make("tvbound", total_variation(p, PoissonLaw(lambda)),
                           std::sqrt(2.0 * fisher), kInequalityTol)
      .with("lambda", lambda)
      .with("fisher", fisher);
}

BoundReport hellinger_chain_report(const Pmf& p) {
  const double lambda = p.mean();
  const PoissonLaw po(lambda);
  const double mu = hellinger_affinity(p, po);
  const double fisher = scaled_fisher_info(p);
  return BoundReport::make_chain("hellinger_chain", hellinger_sq(p, po),
                                 2.0 * (1.0 - mu * mu), 2.0 * fisher,
                                 kInequalityTol)
      .with("lambda", lambda)
      .with("affinity", mu)
      .with("total_variation", total_variation(p, po));
}

BoundReport cramer_rao_report(const Pmf& p) {
  const double lambda = p.mean();
  const double var = p.variance();
  return BoundReport::make("cramer_rao", cramer_rao_lower(lambda, var),
                           scaled_fisher_info(p), kInequalityTol)
      .with("lambda", lambda)
      .with("variance", var);
}

BoundReport subadditivity_report(std::span<const Pmf> parts) {
  std::vector<MeanAndFisher> mf;
  mf.reserve(parts.size());
  for (const Pmf& part : parts) mf.push_back({part.mean(), scaled_fisher_info(part)});
  const Pmf sum = sum_independent(parts);
  return BoundReport::make("prop3_subadditivity", scaled_fisher_info(sum),
                           subadditive_combination(mf), kInequalityTol)
      .with("parts", static_cast<std::int64_t>(parts.size()))
      .with("lambda", sum.mean());
}

BoundReport pinsker_report(const Pmf& p, const Pmf& q) {
  const double tv = total_variation(p, q);
  return BoundReport::make("pinsker", 0.5 * tv * tv, relative_entropy(p, q).value,
                           kPinskerTol)
      .with("total_variation", tv);
}

BoundReport poincare_check(double lambda,
                           const std::function<double(std::size_t)>& g,
                           std::size_t horizon) {
  const PoissonLaw po(lambda);
  std::vector<double> w(horizon + 1);
  std::vector<double> gx(horizon + 2);
  for (std::size_t x = 0; x <= horizon; ++x) w[x] = po.pmf(x);
  for (std::size_t x = 0; x <= horizon + 1; ++x) gx[x] = g(x);
  CompensatedSum mass;
  CompensatedSum first;
  for (std::size_t x = 0; x <= horizon; ++x) {
    mass += w[x];
    first += w[x] * gx[x];
  }
  const double mu = first.value() / mass.value();
  CompensatedSum var;
  CompensatedSum grad;
  for (std::size_t x = 0; x <= horizon; ++x) {
    const double c = gx[x] - mu;
    const double d = gx[x + 1] - gx[x];
    var += w[x] * c * c;
    grad += w[x] * d * d;
  }
  return BoundReport::make("poincare", var.value(), lambda * grad.value(),
                           kIdentityTol)
      .with("lambda", lambda)
      .with("horizon", static_cast<std::int64_t>(horizon))
      .with("mean_of_g", mu);
}

// ---------------------------------------------------------------------------
// Worked examples

double markov_mi_closed_form(std::size_t n) {
  const double nd = static_cast<double>(n);
  const double h1 = binary_entropy(1.0 / nd);
  const double h2 = binary_entropy(1.0 / (nd + 1.0));
  const double h3 = binary_entropy(2.0 / (nd + 1.0));
  return (nd - 1.0) * (h1 - h2) + (nd - 1.0) / nd * h2 - (nd - 1.0) / nd * h3;
}

BoundReport markov_example_report(std::size_t n) {
  if (n < 3) throw std::invalid_argument("markov_example_report: n must be >= 3");
  const MarkovChainSpec spec = markov_spec_paper(n);
  const Pmf law = markov_sum_distribution(spec);
  const double lhs = relative_entropy(law, PoissonLaw(1.0)).value;

  MarkovChainSpec pair = spec;
  pair.n = 2;
  const JointBinary pair_law = joint_from_markov(pair);
  const std::array<std::size_t, 1> first{0};
  const std::array<std::size_t, 1> second{1};
  const double mi = mutual_information(pair_law, first, second);

  const double nd = static_cast<double>(n);
  const double intermediate = 1.0 / nd + (nd - 1.0) * mi;
  const double rhs = 3.0 * std::log(nd) / nd + 1.0 / nd;
  return BoundReport::make_chain("markov_example", lhs, intermediate, rhs,
                                 kInequalityTol)
      .with("n", static_cast<std::int64_t>(n))
      .with("pair_mutual_information", mi)
      .with("closed_form_mi_term", markov_mi_closed_form(n))
      .with("sum_mean", law.mean());
}

double compound_term_divergence(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("compound_term_divergence: p must lie in [0, 1)");
  }
  return p * p + (1.0 - p) * (p + std::log1p(-p)) - 0.5 * p * std::log1p(p / 4.0);
}

std::vector<BoundReport> compound_example_report(std::span<const double> ps) {
  check_bernoulli_list(ps, "compound_example_report");
  const double lambda = sum_of(ps);
  const double rhs = sum_of_squares(ps);
  double lhs = 0.0;
  if (lambda > 0.0) {
    lhs = relative_entropy(compound_sum_distribution(ps),
                           CompoundPoissonLaw(lambda / 2.0, lambda / 2.0))
              .value;
  }
  std::vector<BoundReport> out;
  out.push_back(BoundReport::make("compound_total", lhs, rhs, kInequalityTol)
                    .with("n", static_cast<std::int64_t>(ps.size()))
                    .with("lambda", lambda));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double p = ps[i];
    double term = 0.0;
    if (p > 0.0) {
      const double single[] = {p};
      term = relative_entropy(compound_sum_distribution(single),
                              CompoundPoissonLaw(p / 2.0, p / 2.0))
                 .value;
    }
    out.push_back(BoundReport::make("compound_term", term, p * p, kInequalityTol)
                      .with("index", static_cast<std::int64_t>(i))
                      .with("p", p)
                      .with("closed_form", compound_term_divergence(p)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poisson smoothing

QuadratureSpec default_quadrature(double lambda) {
  QuadratureSpec q;
  q.t_max = 50.0 * (1.0 + lambda);
  q.abs_tol = 1e-6;
  q.max_depth = 50;
  return q;
}

namespace {

constexpr int kPanels = 8;
constexpr double kSmoothingTailEps = 1e-14;

// Integrates f over [0, t_max] after substituting t = u^2, which tames the
// log-singularity of the smoothing integrand at t = 0. Panels are packed
// towards the origin.
QuadratureResult integrate_smoothing(const std::function<double(double)>& f,
                                     const QuadratureSpec& quad) {
  const std::function<double(double)> g = [&f](double u) {
    return u == 0.0 ? 0.0 : 2.0 * u * f(u * u);
  };
  const double u_max = std::sqrt(quad.t_max);
  QuadratureResult total;
  for (int k = 0; k < kPanels; ++k) {
    const double a = u_max * std::pow(static_cast<double>(k) / kPanels, 2.0);
    const double b = u_max * std::pow(static_cast<double>(k + 1) / kPanels, 2.0);
    const auto part = adaptive_simpson(g, a, b, quad.abs_tol / kPanels, quad.max_depth);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.evaluations += part.evaluations;
  }
  return total;
}

// The integrand decays like a/s^2 + b/s^3 + c/s^4 in s = lambda + t. The
// three coefficients are solved through nodes at t_max/4, t_max/2 and t_max
// and the expansion is integrated analytically over [t_max, inf).
double fitted_tail(const std::function<double(double)>& f, double lambda,
                   double t_max) {
  const double ts[3] = {t_max / 4.0, t_max / 2.0, t_max};
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    const double w = 1.0 / (lambda + ts[r]);
    m[r][0] = w * w;
    m[r][1] = w * w * w;
    m[r][2] = w * w * w * w;
    m[r][3] = f(ts[r]);
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (int r = c + 1; r < 3; ++r) {
      const double factor = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  double coef[3];
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * coef[k];
    coef[r] = acc / m[r][r];
  }
  const double s = lambda + t_max;
  return coef[0] / s + coef[1] / (2.0 * s * s) + coef[2] / (3.0 * s * s * s);
}

}  // namespace

DeBruijnOutcome debruijn_identity_report(const Pmf& p, const QuadratureSpec& quad) {
  quad.validate();
  const double lambda = p.mean();
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("debruijn_identity_report: mean must be positive");
  }
  DeBruijnOutcome out;
  out.divergence = relative_entropy(p, PoissonLaw(lambda)).value;

  double worst_norm = 0.0;
  const std::function<double(double)> integrand = [&](double t) {
    const SmoothedLaw smoothed(p, t);
    const std::size_t last =
        p.size() + poisson_horizon(t, kSmoothingTailEps) + 1;
    const std::vector<double> pt = smoothed.pmf_upto(last + 1);
    const double scale = lambda + t;
    CompensatedSum div;
    CompensatedSum norm;
    for (std::size_t r = 0; r <= last; ++r) {
      const double shifted = static_cast<double>(r + 1) * pt[r + 1] / scale;
      norm += shifted;
      if (pt[r] == 0.0) continue;
      if (shifted == 0.0) break;  // both sides have underflowed from here on
      // P log(P/Q) - P + Q with u = Q/P keeps every term nonnegative.
      const double d = shifted / pt[r] - 1.0;
      div += pt[r] * (d - std::log1p(d));
    }
    worst_norm = std::max(worst_norm, std::fabs(norm.value() - 1.0));
    return div.value();
  };

  const QuadratureResult body = integrate_smoothing(integrand, quad);
  out.tail_estimate = fitted_tail(integrand, lambda, quad.t_max);
  out.integral = body.value + out.tail_estimate;
  out.max_normalization_error = worst_norm;
  out.evaluations = body.evaluations;

  const double tol = std::max(quad.abs_tol, kQuadratureTol);
  out.report = BoundReport::make("prop4_identity",
                                 std::fabs(out.divergence - out.integral), 0.0, tol)
                   .with("divergence", out.divergence)
                   .with("integral", out.integral)
                   .with("tail_estimate", out.tail_estimate)
                   .with("quadrature_error", body.error_estimate)
                   .with("max_normalization_error", worst_norm)
                   .with("t_max", quad.t_max)
                   .with("abs_tol", quad.abs_tol)
                   .with("lambda", lambda)
                   .with("evaluations", static_cast<std::int64_t>(body.evaluations));
  return out;
}

DeBruijnDiagnostic debruijn_diagnostic(const Pmf& p, const QuadratureSpec& quad) {
  quad.validate();
  const double lambda = p.mean();
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("debruijn_diagnostic: mean must be positive");
  }
  const std::function<double(double)> integrand = [&](double t) {
    const Pmf smoothed = poisson_smooth(p, t, kSmoothingTailEps);
    return scaled_fisher_info(smoothed) / (2.0 * (lambda + t));
  };
  DeBruijnDiagnostic out;
  out.divergence = relative_entropy(p, PoissonLaw(lambda)).value;
  const QuadratureResult body = integrate_smoothing(integrand, quad);
  out.tail_estimate = fitted_tail(integrand, lambda, quad.t_max);
  out.approximation = body.value + out.tail_estimate;
  return out;
}

std::vector<BoundReport> smoothing_decay_check(const Pmf& p,
                                               std::span<const double> ts) {
  const double lambda = p.mean();
  const double fisher = scaled_fisher_info(p);
  std::vector<BoundReport> out;
  out.reserve(ts.size());
  for (double t : ts) {
    const double smoothed = scaled_fisher_info(poisson_smooth(p, t));
    out.push_back(BoundReport::make("smoothing_decay", smoothed,
                                    lambda / (lambda + t) * fisher, kIdentityTol)
                      .with("t", t)
                      .with("lambda", lambda));
  }
  return out;
}

double bernoulli_poisson_gap(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("bernoulli_poisson_gap: p must lie in [0, 1)");
  }
  return p + (1.0 - p) * std::log1p(-p);
}

BoundReport bernoulli_gap_report(double p) {
  const double gap = bernoulli_poisson_gap(p);
  const double pointwise =
      p > 0.0 ? relative_entropy(pmf_bernoulli(p), PoissonLaw(p)).value : 0.0;
  return BoundReport::make("bernoulli_gap", gap, p * p, kInequalityTol)
      .with("p", p)
      .with("pointwise_divergence", pointwise);
}

BoundReport example1_rate_report(double lambda, std::size_t n) {
  if (!(lambda > 0.0) || static_cast<double>(n) <= lambda) {
    throw std::invalid_argument("example1_rate_report: need lambda > 0 and n > lambda");
  }
  const double nd = static_cast<double>(n);
  const double p = lambda / nd;
  const double t1 = nd * p * p * p / (1.0 - p) / lambda;
  const double eps = lambda / nd;
  return BoundReport::make("example1_rate", pinsker_tv_from_divergence({t1}),
                           (2.0 + eps) * lambda / nd, kInequalityTol)
      .with("lambda", lambda)
      .with("n", static_cast<std::int64_t>(n))
      .with("theorem1_rhs", t1);
}

}  // namespace smallnum
