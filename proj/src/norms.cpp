#include "sturm/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace sturm {

void validate(const GridFunction& g) {
  if (g.grid.size() != g.values.size() || g.grid.size() < 2) {
    throw std::invalid_argument("grid function: grid/values size mismatch");
  }
  if (g.d1 && g.d1->size() != g.grid.size()) {
    throw std::invalid_argument("grid function: d1 track size mismatch");
  }
  if (g.d2 && g.d2->size() != g.grid.size()) {
    throw std::invalid_argument("grid function: d2 track size mismatch");
  }
  for (std::size_t i = 1; i < g.grid.size(); ++i) {
    if (!(g.grid[i - 1] < g.grid[i])) {
      throw std::invalid_argument("grid function: grid must be strictly increasing");
    }
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: n >= 2 required");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  out.back() = hi;
  return out;
}

double lp_norm(const std::vector<double>& grid,
               const std::vector<double>& values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1 required");
  if (grid.size() != values.size() || grid.size() < 2) {
    throw std::invalid_argument("lp_norm: grid/values size mismatch");
  }
  double acc = 0.0;
  double prev = std::pow(std::abs(values[0]), p);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = std::pow(std::abs(values[i]), p);
    acc += 0.5 * (prev + cur) * (grid[i] - grid[i - 1]);
    prev = cur;
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const GridFunction& g, double p) {
  validate(g);
  return lp_norm(g.grid, g.values, p);
}

namespace {

const std::vector<double>& require_d2(const GridFunction& y) {
  if (!y.d2) {
    throw std::invalid_argument("second-derivative track required for this norm");
  }
  return *y.d2;
}

}  // namespace

double w_norm(const GridFunction& y, const Coefficient& coeff, double p) {
  validate(y);
  const auto& ddy = require_d2(y);
  std::vector<double> qy(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    qy[i] = coeff.eval(y.grid[i]) * y.values[i];
  }
  return lp_norm(y.grid, ddy, p) + lp_norm(y.grid, qy, p);
}

double s_norm(const GridFunction& y, const Coefficient& coeff, double p) {
  validate(y);
  const auto& ddy = require_d2(y);
  std::vector<double> defect(y.size());
  std::vector<double> weighted(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double q = coeff.eval(y.grid[i]);
    defect[i] = ddy[i] - q * y.values[i];
    weighted[i] = std::pow(q, 1.0 / p) * y.values[i];
  }
  return lp_norm(y.grid, defect, p) + lp_norm(y.grid, weighted, p);
}

double boundary_mass_fraction(const GridFunction& g, double p) {
  validate(g);
  const double lo = g.grid.front();
  const double hi = g.grid.back();
  const double cut = 0.05 * (hi - lo);
  double total = 0.0;
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double panel =
        0.5 * (std::pow(std::abs(g.values[i - 1]), p) +
               std::pow(std::abs(g.values[i]), p)) *
        (g.grid[i] - g.grid[i - 1]);
    total += panel;
    if (g.grid[i] <= lo + cut) left += panel;
    if (g.grid[i - 1] >= hi - cut) right += panel;
  }
  if (total <= 0.0) return 0.0;
  return std::max(left, right) / total;
}

}  // namespace sturm
