#include "smallnum/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fmt/format.h>

#include "smallnum/numeric.hpp"
#include "smallnum/sum_engines.hpp"

namespace smallnum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Forward tail sums stop once a term is this small relative to the sum.
constexpr double kTailRelStop = 1e-18;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Pmf

Pmf::Pmf(std::vector<double> probs, double tail)
    : probs_(std::move(probs)), tail_(tail) {
  CompensatedSum m;
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    m += static_cast<double>(x) * probs_[x];
  }
  mean_ = m.value();
  CompensatedSum v;
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    const double d = static_cast<double>(x) - mean_;
    v += d * d * probs_[x];
  }
  variance_ = v.value();
}

Pmf Pmf::from_probs(std::vector<double> probs, double tail) {
  require(!probs.empty(), "Pmf: empty support");
  require(probs.size() <= kMaxSupport, "Pmf: support exceeds 1e6 entries");
  require(std::isfinite(tail) && tail >= 0.0 && tail <= 1.0,
          "Pmf: truncation tail must lie in [0, 1]");
  CompensatedSum total(tail);
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          fmt::format("Pmf: probability {} outside [0, 1]", p));
    }
    total += p;
  }
  const double mass = total.value();
  if (std::fabs(mass - 1.0) > kMassTolerance) {
    throw std::invalid_argument(
        fmt::format("Pmf: total mass {:.17g} is not within 1e-12 of 1", mass));
  }
  return Pmf(std::move(probs), tail);
}

Pmf Pmf::from_law(std::vector<double> probs, double tail, double mean,
                  double variance) {
  require(std::isfinite(mean) && mean >= 0.0 && std::isfinite(variance) &&
              variance >= 0.0,
          "Pmf: law moments must be finite and nonnegative");
  Pmf p = from_probs(std::move(probs), tail);
  p.mean_ = mean;
  p.variance_ = variance;
  return p;
}

Pmf Pmf::point_mass(std::size_t at) {
  require(at < kMaxSupport, "Pmf: point mass beyond support cap");
  std::vector<double> probs(at + 1, 0.0);
  probs[at] = 1.0;
  return Pmf(std::move(probs), 0.0);
}

double Pmf::log_pmf(std::size_t k) const noexcept {
  const double p = (*this)[k];
  return p > 0.0 ? std::log(p) : kNegInf;
}

double Pmf::mass_above(std::size_t k) const noexcept {
  CompensatedSum s(tail_);
  for (std::size_t j = k + 1; j < probs_.size(); ++j) s += probs_[j];
  return s.value();
}

// ---------------------------------------------------------------------------
// PoissonLaw

PoissonLaw::PoissonLaw(double lambda) : lambda_(lambda) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "PoissonLaw: rate must be positive and finite");
  log_lambda_ = std::log(lambda);
}

namespace {

// log k! for small k from exact factorials.
constexpr std::size_t kSmallFactorials = 16;

double log_factorial_small(std::size_t k) {
  double f = 1.0;
  for (std::size_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
  return std::log(f);
}

// Stirling remainder log k! - (k + 1/2) log k + k - log sqrt(2 pi), k >= 16.
double stirling_remainder(double k) {
  constexpr double s0 = 1.0 / 12.0, s1 = 1.0 / 360.0, s2 = 1.0 / 1260.0,
                   s3 = 1.0 / 1680.0, s4 = 1.0 / 1188.0;
  const double k2 = k * k;
  return (s0 - (s1 - (s2 - (s3 - s4 / k2) / k2) / k2) / k2) / k;
}

// x log(x/m) + m - x without cancellation when x is close to m.
double deviance_term(double x, double m) {
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    const double v = (x - m) / (x + m);
    const double v2 = v * v;
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

}  // namespace

double PoissonLaw::log_pmf(std::size_t k) const noexcept {
  const double kd = static_cast<double>(k);
  if (k == 0) return -lambda_;
  if (k < kSmallFactorials) {
    return kd * log_lambda_ - lambda_ - log_factorial_small(k);
  }
  // Saddle-point form: accurate to a few ulp near the mode, where the naive
  // k log(lambda) - lambda - lgamma(k+1) loses digits to cancellation.
  return -stirling_remainder(kd) - deviance_term(kd, lambda_) -
         0.5 * std::log(2.0 * std::numbers::pi * kd);
}

double PoissonLaw::pmf(std::size_t k) const noexcept {
  return std::exp(log_pmf(k));
}

double PoissonLaw::mass_above(std::size_t k) const noexcept {
  if (static_cast<double>(k) + 1.0 <= lambda_) {
    // Bulk of the mass lies above k: the complement is well conditioned.
    CompensatedSum head;
    for (std::size_t j = 0; j <= k; ++j) head += pmf(j);
    return std::max(0.0, 1.0 - head.value());
  }
  double term = pmf(k + 1);
  if (term == 0.0) return 0.0;
  CompensatedSum sum(term);
  for (std::size_t j = k + 2;; ++j) {
    term *= lambda_ / static_cast<double>(j);
    sum += term;
    if (term <= kTailRelStop * sum.value()) break;
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// CompoundPoissonLaw

CompoundPoissonLaw::CompoundPoissonLaw(double lambda1, double lambda2)
    : lambda1_(lambda1), lambda2_(lambda2) {
  require(std::isfinite(lambda1) && std::isfinite(lambda2) && lambda1 >= 0.0 &&
              lambda2 >= 0.0,
          "CompoundPoissonLaw: rates must be nonnegative and finite");
  require(lambda1 + lambda2 > 0.0,
          "CompoundPoissonLaw: rates must not both vanish");
}

std::vector<double> CompoundPoissonLaw::log_pmf_upto(std::size_t last) const {
  const double log_a = lambda1_ > 0.0 ? std::log(lambda1_) : kNegInf;
  const double log_b = lambda2_ > 0.0 ? std::log(2.0 * lambda2_) : kNegInf;
  std::vector<double> lg(last + 1, kNegInf);
  lg[0] = -(lambda1_ + lambda2_);
  for (std::size_t k = 1; k <= last; ++k) {
    const double one_back = log_a + lg[k - 1];
    const double two_back = k >= 2 ? log_b + lg[k - 2] : kNegInf;
    lg[k] = log_add(one_back, two_back) - std::log(static_cast<double>(k));
  }
  return lg;
}

double CompoundPoissonLaw::log_pmf(std::size_t k) const {
  return log_pmf_upto(k).back();
}

double CompoundPoissonLaw::pmf(std::size_t k) const {
  return std::exp(log_pmf(k));
}

double CompoundPoissonLaw::mass_above(std::size_t k) const {
  const double m = mean();
  if (static_cast<double>(k) + 1.0 <= m) {
    const auto lg = log_pmf_upto(k);
    CompensatedSum head;
    for (double l : lg) head += std::exp(l);
    return std::max(0.0, 1.0 - head.value());
  }
  std::size_t last =
      k + 64 + static_cast<std::size_t>(std::ceil(4.0 * m + 40.0 * std::sqrt(m)));
  for (;;) {
    const auto lg = log_pmf_upto(last);
    CompensatedSum sum;
    for (std::size_t j = k + 1; j <= last; ++j) sum += std::exp(lg[j]);
    const double s = sum.value();
    const double edge = std::exp(lg[last]) + std::exp(lg[last - 1]);
    if (s == 0.0 || edge <= kTailRelStop * s) return s;
    last *= 2;
  }
}

// ---------------------------------------------------------------------------
// Constructors

Pmf pmf_bernoulli(double p) {
  require(p >= 0.0 && p <= 1.0, "pmf_bernoulli: p must lie in [0, 1]");
  if (p == 0.0) return Pmf::point_mass(0);
  return Pmf::from_probs({1.0 - p, p});
}

std::size_t poisson_horizon(double lambda, double tail_eps) {
  const PoissonLaw law(lambda);
  require(tail_eps > 0.0, "poisson_horizon: tail_eps must be positive");
  const auto start = static_cast<std::size_t>(std::ceil(lambda));
  for (std::size_t k = start; k < kMaxSupport; ++k) {
    // The tail above k contains pmf(k+1), so that term screens cheaply; the
    // exact forward tail (k >= lambda here) decides.
    if (law.pmf(k + 1) <= tail_eps && law.mass_above(k) <= tail_eps) return k;
  }
  throw std::invalid_argument("poisson_horizon: truncation index exceeds 1e6");
}

Pmf pmf_poisson_truncated(double lambda, double tail_eps) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "pmf_poisson_truncated: lambda must be positive");
  require(tail_eps > 0.0 && tail_eps <= 1e-6,
          "pmf_poisson_truncated: tail_eps must lie in (0, 1e-6]");
  const PoissonLaw law(lambda);
  const std::size_t last = poisson_horizon(lambda, tail_eps);
  std::vector<double> probs(last + 1);
  for (std::size_t k = 0; k <= last; ++k) probs[k] = law.pmf(k);
  return Pmf::from_law(std::move(probs), law.mass_above(last), lambda, lambda);
}

Pmf pmf_geometric(double q, double tail_eps) {
  require(q > 0.0 && q <= 1.0, "pmf_geometric: q must lie in (0, 1]");
  require(tail_eps > 0.0 && tail_eps <= 1e-6,
          "pmf_geometric: tail_eps must lie in (0, 1e-6]");
  if (q == 1.0) return Pmf::point_mass(0);
  const double log_r = std::log1p(-q);
  // Smallest N with (1-q)^(N+1) <= tail_eps.
  auto last = static_cast<std::size_t>(
      std::max(0.0, std::ceil(std::log(tail_eps) / log_r) - 1.0));
  while (std::exp(static_cast<double>(last + 1) * log_r) > tail_eps) ++last;
  while (last > 0 && std::exp(static_cast<double>(last) * log_r) <= tail_eps) {
    --last;
  }
  // Score-based functionals weight the dropped tail by (x+1)^2, so the cut
  // also bounds E[(X+1)^2; X > last]. By memorylessness that equals
  // (1-q)^(last+1) E[(last + 2 + Y)^2] with Y ~ Geom(q).
  const double m = (1.0 - q) / q;
  const double second = m / q + m * m;  // E[Y^2]
  auto tail_moment = [&](std::size_t n) {
    const double shift = static_cast<double>(n) + 2.0;
    return std::exp(static_cast<double>(n + 1) * log_r) *
           (shift * shift + 2.0 * shift * m + second);
  };
  while (last < kMaxSupport && tail_moment(last) > tail_eps) ++last;
  require(last < kMaxSupport, "pmf_geometric: truncation index exceeds 1e6");
  std::vector<double> probs(last + 1);
  for (std::size_t x = 0; x <= last; ++x) {
    probs[x] = q * std::exp(static_cast<double>(x) * log_r);
  }
  const double mean = (1.0 - q) / q;
  return Pmf::from_law(std::move(probs),
                       std::exp(static_cast<double>(last + 1) * log_r), mean,
                       mean / q);
}

Pmf pmf_compound_poisson(const CompoundPoissonLaw& law, double tail_eps) {
  const double half_eps = tail_eps / 2.0;
  const double mean = law.mean();
  const double variance = law.lambda1() + 4.0 * law.lambda2();
  Pmf ones = law.lambda1() > 0.0 ? pmf_poisson_truncated(law.lambda1(), half_eps)
                                 : Pmf::point_mass(0);
  if (law.lambda2() == 0.0) return ones;

  const Pmf twos_base = pmf_poisson_truncated(law.lambda2(), half_eps);
  std::vector<double> pushed(2 * twos_base.size() - 1, 0.0);
  for (std::size_t k = 0; k < twos_base.size(); ++k) {
    pushed[2 * k] = twos_base[k];
  }
  const Pmf twos = Pmf::from_probs(std::move(pushed), twos_base.tail());
  const Pmf sum = convolve(ones, twos);
  return Pmf::from_law(std::vector<double>(sum.probs().begin(), sum.probs().end()),
                       sum.tail(), mean, variance);
}

}  // namespace smallnum
