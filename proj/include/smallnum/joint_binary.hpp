#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smallnum {

inline constexpr std::size_t kMaxJointCoordinates = 20;

/// Explicit joint law of n binary coordinates. Atom `mask` carries the
/// probability that X_i = bit i of mask for every i.
class JointBinary {
 public:
  /// Throws std::invalid_argument unless 1 <= n <= 20, atoms.size() == 2^n,
  /// atoms are nonnegative and sum to one within 1e-12.
  JointBinary(std::size_t n, std::vector<double> atoms);

  /// Product of independent Bernoulli(ps[i]) coordinates.
  static JointBinary independent(std::span<const double> ps);

  std::size_t n() const noexcept { return n_; }
  std::span<const double> atoms() const noexcept { return atoms_; }
  double atom(std::size_t mask) const { return atoms_.at(mask); }

  /// P(X_i = 1).
  double coordinate_mean(std::size_t i) const;

  /// Joint law of the listed coordinates, in the listed order.
  JointBinary marginal(std::span<const std::size_t> coords) const;

 private:
  std::size_t n_;
  std::vector<double> atoms_;
};

}  // namespace smallnum
