#pragma once

#include <vector>

#include "sturm/coefficient.hpp"

namespace sturm {

// Discretized fundamental pair {u, v} of z'' = q z on [-L, L]:
// u positive nonincreasing, v positive nondecreasing, Wronskian
// v'u - u'v normalized to 1 at the midpoint.  Immutable once built.
struct FundamentalSystem {
  std::vector<double> grid;
  std::vector<double> u, du;
  std::vector<double> v, dv;
  double wronskian_drift = 0.0;  // max |v'u - u'v - 1| over the grid
  bool log_space = false;        // whether the overflow fallback was taken
};

struct FssOptions {
  double wronskian_tol = 1e-6;
  double slope_floor = 1e-6;  // minimum WKB boundary slope where q vanishes
};

// Builds the pair by integrating v forward from -L and u backward from +L
// with WKB boundary slopes (v'(-L) = max(sqrt(q(-L)), slope_floor), u'(L) the
// mirror image).  Values overflowing the linear integration trigger an
// automatic log-space pass; if the dynamic range is too wide even then,
// throws std::overflow_error.  Drift above wronskian_tol throws
// ConditioningError carrying the measured drift.
FundamentalSystem compute_fss(const Coefficient& coeff, double L, int n_points,
                              const FssOptions& opts = {});

// Symmetric nonnegative kernel G(x, t) = u(max(x,t)) * v(min(x,t)), with u
// and v interpolated linearly between grid nodes.  Arguments outside the grid
// hull throw std::domain_error.
double greens_kernel(const FundamentalSystem& fss, double x, double t);

}  // namespace sturm
