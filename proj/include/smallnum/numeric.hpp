#pragma once

#include <cmath>
#include <span>

namespace smallnum {

/// Neumaier-compensated accumulator. Error stays O(eps) independent of the
/// number of addends as long as no catastrophic cancellation is intended.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_total(std::span<const double> xs) noexcept;

/// log(exp(a) + exp(b)), tolerating -inf operands.
double log_add(double a, double b) noexcept;

}  // namespace smallnum
