#include "smallnum/joint_binary.hpp"

#include <cmath>
#include <stdexcept>

#include "smallnum/numeric.hpp"

namespace smallnum {

JointBinary::JointBinary(std::size_t n, std::vector<double> atoms)
    : n_(n), atoms_(std::move(atoms)) {
  if (n_ == 0 || n_ > kMaxJointCoordinates) {
    throw std::invalid_argument("JointBinary: n must lie in [1, 20]");
  }
  if (atoms_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("JointBinary: expected 2^n atoms");
  }
  CompensatedSum total;
  for (double a : atoms_) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("JointBinary: atom outside [0, 1]");
    }
    total += a;
  }
  if (std::fabs(total.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("JointBinary: atoms do not sum to one");
  }
}

JointBinary JointBinary::independent(std::span<const double> ps) {
  const std::size_t n = ps.size();
  if (n == 0 || n > kMaxJointCoordinates) {
    throw std::invalid_argument("JointBinary: n must lie in [1, 20]");
  }
  std::vector<double> atoms(std::size_t{1} << n, 1.0);
  for (std::size_t mask = 0; mask < atoms.size(); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      atoms[mask] *= (mask >> i) & 1U ? ps[i] : 1.0 - ps[i];
    }
  }
  return JointBinary(n, std::move(atoms));
}

double JointBinary::coordinate_mean(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("JointBinary: coordinate out of range");
  CompensatedSum s;
  for (std::size_t mask = 0; mask < atoms_.size(); ++mask) {
    if ((mask >> i) & 1U) s += atoms_[mask];
  }
  return s.value();
}

JointBinary JointBinary::marginal(std::span<const std::size_t> coords) const {
  const std::size_t m = coords.size();
  if (m == 0 || m > n_) {
    throw std::invalid_argument("JointBinary: bad marginal coordinate set");
  }
  std::vector<bool> seen(n_, false);
  for (std::size_t c : coords) {
    if (c >= n_ || seen[c]) {
      throw std::invalid_argument("JointBinary: marginal coordinates must be distinct and in range");
    }
    seen[c] = true;
  }
  std::vector<CompensatedSum> acc(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < atoms_.size(); ++mask) {
    std::size_t sub = 0;
    for (std::size_t j = 0; j < m; ++j) {
      sub |= ((mask >> coords[j]) & 1U) << j;
    }
    acc[sub] += atoms_[mask];
  }
  std::vector<double> out(acc.size());
  for (std::size_t s = 0; s < acc.size(); ++s) out[s] = acc[s].value();
  return JointBinary(m, std::move(out));
}

}  // namespace smallnum
