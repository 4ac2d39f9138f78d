#include "smallnum/sum_engines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "smallnum/info_metrics.hpp"
#include "smallnum/numeric.hpp"

namespace smallnum {

Pmf convolve(const Pmf& p, const Pmf& q) {
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  const std::size_t len = m + n - 1;
  if (len > kMaxSupport) {
    throw std::invalid_argument("convolve: result support exceeds 1e6 entries");
  }
  const auto ps = p.probs();
  const auto qs = q.probs();
  std::vector<double> out(len);
  double clamped = 0.0;
  for (std::size_t z = 0; z < len; ++z) {
    const std::size_t lo = z >= n - 1 ? z - (n - 1) : 0;
    const std::size_t hi = std::min(z, m - 1);
    CompensatedSum acc;
    for (std::size_t x = lo; x <= hi; ++x) acc += ps[x] * qs[z - x];
    const double v = acc.value();
    // Subnormal results carry too few bits to be trusted as probabilities
    // (a later ratio P(x+1)/P(x) would be noise); they join the tail.
    if (v < std::numeric_limits<double>::min()) {
      clamped += std::fabs(v);
      out[z] = 0.0;
    } else {
      out[z] = v;
    }
  }
  // Moments of independent sums add; this keeps exact law moments exact.
  return Pmf::from_law(std::move(out), p.tail() + q.tail() + clamped,
                       p.mean() + q.mean(), p.variance() + q.variance());
}

Pmf sum_independent(std::span<const Pmf> parts) {
  if (parts.empty()) {
    throw std::invalid_argument("sum_independent: need at least one part");
  }
  Pmf acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = convolve(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Markov chains

void MarkovChainSpec::validate() const {
  if (n == 0) throw std::invalid_argument("MarkovChainSpec: n must be >= 1");
  if (!(initial >= 0.0 && initial <= 1.0)) {
    throw std::invalid_argument("MarkovChainSpec: initial must lie in [0, 1]");
  }
  for (const auto& row : transition) {
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("MarkovChainSpec: entry outside [0, 1]");
      }
    }
    if (std::fabs(row[0] + row[1] - 1.0) > 1e-14) {
      throw std::invalid_argument("MarkovChainSpec: row does not sum to one");
    }
  }
}

MarkovChainSpec markov_spec_paper(std::size_t n) {
  if (n < 2) throw std::invalid_argument("markov_spec_paper: n must be >= 2");
  return markov_spec_paper(n, 1.0 / static_cast<double>(n));
}

MarkovChainSpec markov_spec_paper(std::size_t n, double initial) {
  if (n < 2) throw std::invalid_argument("markov_spec_paper: n must be >= 2");
  const double nd = static_cast<double>(n);
  MarkovChainSpec spec;
  spec.n = n;
  spec.transition = {{{nd / (nd + 1.0), 1.0 / (nd + 1.0)},
                      {(nd - 1.0) / (nd + 1.0), 2.0 / (nd + 1.0)}}};
  spec.initial = initial;
  spec.validate();
  return spec;
}

Pmf markov_sum_distribution(const MarkovChainSpec& spec) {
  spec.validate();
  if (spec.n > kMaxMarkovLength) {
    throw std::invalid_argument("markov_sum_distribution: n exceeds 1e5");
  }
  const auto& t = spec.transition;
  // at[state][partial sum]
  std::array<std::vector<double>, 2> at{std::vector<double>(spec.n + 1, 0.0),
                                        std::vector<double>(spec.n + 1, 0.0)};
  auto next = at;
  at[0][0] = 1.0 - spec.initial;
  at[1][1] = spec.initial;
  std::size_t active = 1;  // highest partial sum that can carry mass
  for (std::size_t step = 1; step < spec.n; ++step) {
    const std::size_t top = std::min(active + 1, spec.n);
    std::fill_n(next[0].begin(), top + 1, 0.0);
    std::fill_n(next[1].begin(), top + 1, 0.0);
    for (std::size_t s = 0; s <= active; ++s) {
      const double a0 = at[0][s];
      const double a1 = at[1][s];
      next[0][s] += a0 * t[0][0] + a1 * t[1][0];
      next[1][s + 1] += a0 * t[0][1] + a1 * t[1][1];
    }
    std::swap(at, next);
    active = top;
    // Once the top partial sums underflow they stay at zero.
    while (active > 0 && at[0][active] == 0.0 && at[1][active] == 0.0) --active;
  }
  std::vector<double> law(active + 1);
  CompensatedSum total;
  for (std::size_t s = 0; s <= active; ++s) {
    law[s] = at[0][s] + at[1][s];
    total += law[s];
  }
  // Long chains accumulate O(n eps) drift from rows that sum to 1 only in
  // rounded arithmetic.
  const double mass = total.value();
  if (std::fabs(mass - 1.0) > kMassTolerance) {
    for (double& v : law) v /= mass;
  }
  return Pmf::from_probs(std::move(law));
}

JointBinary joint_from_markov(const MarkovChainSpec& spec) {
  spec.validate();
  if (spec.n > kMaxJointCoordinates) {
    throw std::invalid_argument("joint_from_markov: n exceeds 20");
  }
  const std::size_t count = std::size_t{1} << spec.n;
  std::vector<double> atoms(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::size_t prev = mask & 1U;
    double prob = prev ? spec.initial : 1.0 - spec.initial;
    for (std::size_t i = 1; i < spec.n && prob > 0.0; ++i) {
      const std::size_t cur = (mask >> i) & 1U;
      prob *= spec.transition[prev][cur];
      prev = cur;
    }
    atoms[mask] = prob;
  }
  return JointBinary(spec.n, std::move(atoms));
}

// ---------------------------------------------------------------------------
// Compound sums and the joint oracle

Pmf compound_sum_distribution(std::span<const double> ps) {
  Pmf acc = Pmf::point_mass(0);
  for (double p : ps) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument("compound_sum_distribution: p must lie in [0, 1)");
    }
    if (p == 0.0) continue;
    acc = convolve(acc, Pmf::from_probs({1.0 - p, p / 2.0, p / 2.0}));
  }
  return acc;
}

double JointSummary::entropy_gap() const {
  CompensatedSum s;
  for (double h : entropies) s += h;
  return s.value() - joint_entropy;
}

JointSummary joint_oracle_summary(const JointBinary& joint) {
  const std::size_t n = joint.n();
  JointSummary out;
  out.means.resize(n);
  out.entropies.resize(n);
  std::vector<CompensatedSum> ones(n);
  std::vector<CompensatedSum> by_count(n + 1);
  const auto atoms = joint.atoms();
  for (std::size_t mask = 0; mask < atoms.size(); ++mask) {
    const double a = atoms[mask];
    if (a == 0.0) continue;
    by_count[static_cast<std::size_t>(std::popcount(mask))] += a;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) ones[i] += a;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.means[i] = std::clamp(ones[i].value(), 0.0, 1.0);
    out.entropies[i] = binary_entropy(out.means[i]);
  }
  out.joint_entropy = joint_entropy(joint);
  std::vector<double> law(n + 1);
  for (std::size_t k = 0; k <= n; ++k) law[k] = by_count[k].value();
  out.sum_law = Pmf::from_probs(std::move(law));
  return out;
}

Pmf poisson_smooth(const Pmf& p, double t, double tail_eps) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("poisson_smooth: t must be nonnegative");
  }
  if (t == 0.0) return p;
  return convolve(p, pmf_poisson_truncated(t, tail_eps));
}

// ---------------------------------------------------------------------------
// SmoothedLaw

SmoothedLaw::SmoothedLaw(const Pmf& base, double t)
    : base_(base.probs().begin(), base.probs().end()), t_(t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("SmoothedLaw: t must be nonnegative");
  }
}

std::vector<double> SmoothedLaw::pmf_upto(std::size_t last) const {
  std::vector<double> out(last + 1, 0.0);
  if (t_ == 0.0) {
    for (std::size_t r = 0; r <= last && r < base_.size(); ++r) out[r] = base_[r];
    return out;
  }
  const PoissonLaw noise(t_);
  std::vector<double> po(last + 1);
  for (std::size_t k = 0; k <= last; ++k) po[k] = noise.pmf(k);
  for (std::size_t r = 0; r <= last; ++r) {
    CompensatedSum acc;
    const std::size_t hi = std::min(r, base_.size() - 1);
    for (std::size_t x = 0; x <= hi; ++x) acc += base_[x] * po[r - x];
    out[r] = acc.value();
  }
  return out;
}

double SmoothedLaw::pmf(std::size_t r) const { return pmf_upto(r).back(); }

double SmoothedLaw::log_pmf(std::size_t r) const {
  const double v = pmf(r);
  return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

double SmoothedLaw::mass_above(std::size_t r) const {
  CompensatedSum acc;
  if (t_ == 0.0) {
    for (std::size_t x = r + 1; x < base_.size(); ++x) acc += base_[x];
    return acc.value();
  }
  const PoissonLaw noise(t_);
  for (std::size_t x = 0; x < base_.size(); ++x) {
    if (base_[x] == 0.0) continue;
    acc += x > r ? base_[x] : base_[x] * noise.mass_above(r - x);
  }
  return acc.value();
}

}  // namespace smallnum
