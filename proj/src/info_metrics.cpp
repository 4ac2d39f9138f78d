#include "smallnum/info_metrics.hpp"

#include <stdexcept>
#include <vector>

namespace smallnum {

double entropy(std::span<const double> probs) {
  CompensatedSum acc;
  for (double p : probs) {
    if (p > 0.0) acc += -p * std::log(p);
  }
  return acc.value();
}

double entropy(const Pmf& p) { return entropy(p.probs()); }

double joint_entropy(const JointBinary& joint) { return entropy(joint.atoms()); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double mutual_information(const JointBinary& joint,
                          std::span<const std::size_t> left,
                          std::span<const std::size_t> right) {
  if (left.empty() || right.empty()) {
    throw std::invalid_argument("mutual_information: empty index set");
  }
  for (std::size_t a : left) {
    for (std::size_t b : right) {
      if (a == b) {
        throw std::invalid_argument("mutual_information: index sets overlap");
      }
    }
  }
  std::vector<std::size_t> both(left.begin(), left.end());
  both.insert(both.end(), right.begin(), right.end());
  const double h_left = joint_entropy(joint.marginal(left));
  const double h_right = joint_entropy(joint.marginal(right));
  const double h_both = joint_entropy(joint.marginal(both));
  return h_left + h_right - h_both;
}

double pinsker_tv_from_divergence(DivergenceValue d) {
  if (d.value < 0.0) {
    throw std::invalid_argument("pinsker_tv_from_divergence: negative divergence");
  }
  if (d.is_infinite()) return 2.0;
  return std::min(2.0, std::sqrt(2.0 * d.value));
}

}  // namespace smallnum
