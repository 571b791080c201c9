#include "sturm/fss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sturm/errors.hpp"
#include "sturm/ode.hpp"

namespace sturm {

namespace {

constexpr double kOverflowGuard = 1e250;

struct Track {
  std::vector<double> value;
  std::vector<double> slope;  // derivative for linear runs, z'/z for log runs
  bool overflowed = false;
};

Track integrate_linear(const Coefficient& coeff,
                       const std::vector<double>& grid, double z0, double dz0,
                       bool forward) {
  const std::size_t n = grid.size();
  Track t;
  t.value.assign(n, 0.0);
  t.slope.assign(n, 0.0);
  double z = z0, dz = dz0;
  if (forward) {
    t.value[0] = z;
    t.slope[0] = dz;
    for (std::size_t i = 1; i < n; ++i) {
      rk4_linear_step(coeff, grid[i - 1], grid[i], z, dz);
      if (std::abs(z) > kOverflowGuard || std::abs(dz) > kOverflowGuard ||
          !std::isfinite(z)) {
        t.overflowed = true;
        return t;
      }
      t.value[i] = z;
      t.slope[i] = dz;
    }
  } else {
    t.value[n - 1] = z;
    t.slope[n - 1] = dz;
    for (std::size_t i = n - 1; i-- > 0;) {
      rk4_linear_step(coeff, grid[i + 1], grid[i], z, dz);
      if (std::abs(z) > kOverflowGuard || std::abs(dz) > kOverflowGuard ||
          !std::isfinite(z)) {
        t.overflowed = true;
        return t;
      }
      t.value[i] = z;
      t.slope[i] = dz;
    }
  }
  return t;
}

// Log-space pass: value holds log z, slope holds z'/z.
Track integrate_log(const Coefficient& coeff, const std::vector<double>& grid,
                    double s0, bool forward) {
  const std::size_t n = grid.size();
  Track t;
  t.value.assign(n, 0.0);
  t.slope.assign(n, 0.0);
  double w = 0.0, s = s0;
  if (forward) {
    t.slope[0] = s;
    for (std::size_t i = 1; i < n; ++i) {
      rk4_log_step(coeff, grid[i - 1], grid[i], w, s);
      t.value[i] = w;
      t.slope[i] = s;
    }
  } else {
    t.slope[n - 1] = s;
    for (std::size_t i = n - 1; i-- > 0;) {
      rk4_log_step(coeff, grid[i + 1], grid[i], w, s);
      t.value[i] = w;
      t.slope[i] = s;
    }
  }
  return t;
}

std::size_t nearest_index(const std::vector<double>& grid, double x) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return 0;
  if (it == grid.end()) return grid.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  return (x - grid[hi - 1] <= grid[hi] - x) ? hi - 1 : hi;
}

}  // namespace

FundamentalSystem compute_fss(const Coefficient& coeff, double L, int n_points,
                              const FssOptions& opts) {
  if (!(L > 0.0)) throw std::invalid_argument("compute_fss: L must be positive");
  if (n_points < 16) throw std::invalid_argument("compute_fss: n_points >= 16");

  FundamentalSystem fss;
  fss.grid = aligned_grid(coeff, -L, L, n_points, {0.0});
  const std::size_t n = fss.grid.size();

  const double slope_left =
      std::max(std::sqrt(std::max(0.0, coeff.eval(-L))), opts.slope_floor);
  const double slope_right =
      std::max(std::sqrt(std::max(0.0, coeff.eval(L))), opts.slope_floor);

  Track v = integrate_linear(coeff, fss.grid, 1.0, slope_left, true);
  Track u = integrate_linear(coeff, fss.grid, 1.0, -slope_right, false);

  const std::size_t mid = nearest_index(fss.grid, 0.0);

  if (v.overflowed || u.overflowed) {
    // Log-space fallback: rebuild both tracks from logarithmic derivatives
    // and re-center the exponents at the midpoint.
    fss.log_space = true;
    const Track lv = integrate_log(coeff, fss.grid, slope_left, true);
    const Track lu = integrate_log(coeff, fss.grid, -slope_right, false);
    v.value.assign(n, 0.0);
    v.slope.assign(n, 0.0);
    u.value.assign(n, 0.0);
    u.slope.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double ev = lv.value[i] - lv.value[mid];
      const double eu = lu.value[i] - lu.value[mid];
      if (ev > 700.0 || eu > 700.0) {
        throw std::overflow_error(
            "compute_fss: dynamic range too wide even in log space; shrink L");
      }
      v.value[i] = std::exp(ev);
      v.slope[i] = lv.slope[i] * v.value[i];
      u.value[i] = std::exp(eu);
      u.slope[i] = lu.slope[i] * u.value[i];
    }
  }

  // Scale v so the Wronskian v'u - u'v equals 1 at the midpoint.
  const double w_mid =
      v.slope[mid] * u.value[mid] - u.slope[mid] * v.value[mid];
  if (!(w_mid > 0.0) || !std::isfinite(w_mid)) {
    throw ConditioningError("compute_fss: nonpositive midpoint Wronskian",
                            w_mid);
  }
  for (std::size_t i = 0; i < n; ++i) {
    v.value[i] /= w_mid;
    v.slope[i] /= w_mid;
  }

  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    drift = std::max(
        drift, std::abs(v.slope[i] * u.value[i] - u.slope[i] * v.value[i] - 1.0));
  }
  if (drift > opts.wronskian_tol) {
    throw ConditioningError(
        "compute_fss: Wronskian drift exceeds tolerance", drift);
  }

  fss.u = std::move(u.value);
  fss.du = std::move(u.slope);
  fss.v = std::move(v.value);
  fss.dv = std::move(v.slope);
  fss.wronskian_drift = drift;
  return fss;
}

namespace {

double interp(const std::vector<double>& grid, const std::vector<double>& vals,
              double x) {
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return vals.front();
  if (it == grid.end()) return vals.back();
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - grid[lo]) / (grid[hi] - grid[lo]);
  return vals[lo] + t * (vals[hi] - vals[lo]);
}

}  // namespace

double greens_kernel(const FundamentalSystem& fss, double x, double t) {
  if (x < fss.grid.front() || x > fss.grid.back() || t < fss.grid.front() ||
      t > fss.grid.back()) {
    throw std::domain_error("greens_kernel: argument outside the grid hull");
  }
  const double hi = std::max(x, t);
  const double lo = std::min(x, t);
  return interp(fss.grid, fss.u, hi) * interp(fss.grid, fss.v, lo);
}

}  // namespace sturm
