#include "smallnum/quadrature.hpp"

#include <cmath>
#include <fmt/format.h>

namespace smallnum {

void QuadratureSpec::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("QuadratureSpec: t_max must be positive");
  }
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
  }
  if (max_depth < 1) {
    throw std::invalid_argument("QuadratureSpec: max_depth must be >= 1");
  }
}

namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

class Simpson {
 public:
  explicit Simpson(const std::function<double(double)>& f) : f_(f) {}

  double eval(double x) {
    ++evaluations_;
    const double y = f_(x);
    if (!std::isfinite(y)) {
      throw QuadratureError(fmt::format("integrand is not finite at {}", x));
    }
    return y;
  }

  double refine(const Panel& p, double tol, int depth) {
    const double lm = 0.5 * (p.a + p.m);
    const double rm = 0.5 * (p.m + p.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const double delta = left + right - p.whole;
    if (std::fabs(delta) <= 15.0 * tol) {
      error_ += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth <= 0) {
      throw QuadratureError(fmt::format(
          "adaptive Simpson did not converge on [{}, {}]", p.a, p.b));
    }
    return refine({p.a, p.fa, lm, flm, p.m, p.fm, left}, tol / 2.0, depth - 1) +
           refine({p.m, p.fm, rm, frm, p.b, p.fb, right}, tol / 2.0, depth - 1);
  }

  std::size_t evaluations() const { return evaluations_; }
  double error() const { return error_; }

 private:
  const std::function<double(double)>& f_;
  std::size_t evaluations_ = 0;
  double error_ = 0.0;
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson: need b > a");
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("adaptive_simpson: abs_tol must be positive");
  }
  Simpson s(f);
  const double m = 0.5 * (a + b);
  const double fa = s.eval(a);
  const double fm = s.eval(m);
  const double fb = s.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = s.refine({a, fa, m, fm, b, fb, whole}, abs_tol, max_depth);
  return {value, s.error(), s.evaluations()};
}

}  // namespace smallnum
