#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace smallnum {

struct QuadratureSpec {
  double t_max = 0.0;
  double abs_tol = 1e-6;
  int max_depth = 50;

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson on [a, b]. Each bisection halves the tolerance; reaching
/// max_depth without meeting it throws QuadratureError.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth);

}  // namespace smallnum
