#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace lossblockade {

struct MinimumResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a minimum of a unimodal function on [a, b].
inline MinimumResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  const double x = fc < fd ? c : d;
  return {x, fc < fd ? fc : fd, evals};
}

/// Bisection for a sign change of f on [a, b]; fa and fb must differ in sign.
inline double bisect_root(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
  while (std::abs(b - a) > tol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace lossblockade
