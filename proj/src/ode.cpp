#include "sturm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sturm {

std::vector<double> aligned_grid(const Coefficient& coeff, double lo,
                                 double hi, int n_steps,
                                 const std::vector<double>& extra) {
  if (!(lo < hi)) throw std::invalid_argument("aligned_grid: lo < hi required");
  if (n_steps < 1) throw std::invalid_argument("aligned_grid: n_steps >= 1");

  std::vector<double> required = coeff.breakpoints_in(lo, hi);
  for (double e : extra) {
    if (lo < e && e < hi) required.push_back(e);
  }
  std::sort(required.begin(), required.end());

  const double tol = 1e-12 * (hi - lo);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n_steps) + required.size() + 2);
  grid.push_back(lo);
  std::size_t next_required = 0;
  for (int i = 1; i <= n_steps; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / n_steps;
    while (next_required < required.size() && required[next_required] < x - tol) {
      if (required[next_required] > grid.back() + tol) {
        grid.push_back(required[next_required]);
      }
      ++next_required;
    }
    if (x > grid.back() + tol) grid.push_back(x);
  }
  grid.back() = hi;
  return grid;
}

namespace {

// q evaluated at stage points, pulled inside the open panel: the value at a
// shared endpoint must be the one this panel's side of the breakpoint sees.
struct PanelQ {
  const Coefficient& coeff;
  double lo, hi, eps;

  double operator()(double t) const {
    return coeff.eval(std::clamp(t, lo + eps, hi - eps));
  }
};

PanelQ make_panel_q(const Coefficient& coeff, double t0, double t1) {
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  return PanelQ{coeff, lo, hi, 1e-9 * (hi - lo)};
}

}  // namespace

void rk4_linear_step(const Coefficient& coeff, double t0, double t1, double& z,
                     double& dz) {
  const auto q = make_panel_q(coeff, t0, t1);
  const double h = t1 - t0;
  const double tm = t0 + 0.5 * h;
  const double q0 = q(t0);
  const double qm = q(tm);
  const double q1 = q(t1);

  // k = (z', q z)
  const double k1z = dz, k1w = q0 * z;
  const double z2 = z + 0.5 * h * k1z, w2 = dz + 0.5 * h * k1w;
  const double k2z = w2, k2w = qm * z2;
  const double z3 = z + 0.5 * h * k2z, w3 = dz + 0.5 * h * k2w;
  const double k3z = w3, k3w = qm * z3;
  const double z4 = z + h * k3z, w4 = dz + h * k3w;
  const double k4z = w4, k4w = q1 * z4;

  z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  dz += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
}

void rk4_log_step(const Coefficient& coeff, double t0, double t1, double& w,
                  double& s) {
  const auto q = make_panel_q(coeff, t0, t1);
  const double h = t1 - t0;
  const double tm = t0 + 0.5 * h;
  const double q0 = q(t0);
  const double qm = q(tm);
  const double q1 = q(t1);

  // k = (s, q - s^2)
  const double k1w = s, k1s = q0 - s * s;
  const double s2 = s + 0.5 * h * k1s;
  const double k2w = s2, k2s = qm - s2 * s2;
  const double s3 = s + 0.5 * h * k2s;
  const double k3w = s3, k3s = qm - s3 * s3;
  const double s4 = s + h * k3s;
  const double k4w = s4, k4s = q1 - s4 * s4;

  w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
  s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
}

}  // namespace sturm
