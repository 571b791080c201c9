#pragma once

#include <cmath>
#include <utility>

#include "sturm/errors.hpp"

namespace sturm {

namespace detail {

template <class F>
struct SimpsonRun {
  F& f;
  double abs_tol;
  int max_depth;
  int min_depth;
  bool failed = false;

  // One panel: [a, b] with midpoint m, function values fa, fm, fb and the
  // coarse estimate `whole` already computed.
  double panel(double a, double fa, double m, double fm, double b, double fb,
               double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (depth >= min_depth && std::abs(err) <= tol) {
      return left + right + err;
    }
    if (depth >= max_depth) {
      failed = true;
      return left + right + err;
    }
    return panel(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           panel(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

// Adaptive Simpson quadrature on [a, b] with absolute tolerance.
// min_depth forces an initial refinement before the error test may accept a
// panel; this guards against aliased early convergence on oscillatory
// integrands.  Throws ToleranceError (carrying the best estimate) when any
// panel hits max_depth without meeting its share of the tolerance.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth, int min_depth = 0) {
  if (a == b) return 0.0;
  detail::SimpsonRun<F> run{f, abs_tol, max_depth, min_depth};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double result = run.panel(a, fa, m, fm, b, fb, whole, abs_tol, 0);
  if (run.failed) {
    throw ToleranceError("adaptive_simpson: tolerance not met within depth cap",
                         result);
  }
  return result;
}

}  // namespace sturm
