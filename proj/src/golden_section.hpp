// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace trainopt::detail {

/// Maximizer of a unimodal (quasiconcave) f over [lo, hi], located to within
/// tol in the argument. Only evaluations are used, no derivatives.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double inv_phi2 = 1.0 - inv_phi;
  double a = lo, b = hi;
  double h = b - a;
  if (h <= tol) return 0.5 * (a + b);
  double c = a + inv_phi2 * h;
  double d = a + inv_phi * h;
  double fc = f(c);
  double fd = f(d);
  while (h > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + inv_phi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + inv_phi * h;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace trainopt::detail
