#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sturm/coefficient.hpp"
#include "sturm/fss.hpp"
#include "sturm/norms.hpp"
#include "sturm/solver.hpp"

using namespace sturm;

namespace {

double resolvent_oracle(double x) {
  // -y'' + y = e^{-|x|} has the decaying solution (1+|x|) e^{-|x|} / 2.
  return (1.0 + std::abs(x)) * std::exp(-std::abs(x)) / 2.0;
}

double sup_error_interior(const SolveResult& r, double L,
                          double (*exact)(double)) {
  double worst = 0.0;
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    if (std::abs(r.grid[i]) > 0.8 * L) continue;
    worst = std::max(worst, std::abs(r.y[i] - exact(r.grid[i])));
  }
  return worst;
}

// Matches values at shared nodes of two solve grids.
double cross_deviation(const SolveResult& a, const SolveResult& b, double L) {
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.grid.size() && j < b.grid.size()) {
    const double xa = a.grid[i], xb = b.grid[j];
    if (std::abs(xa - xb) <= 1e-9) {
      if (std::abs(xa) <= 0.8 * L) {
        worst = std::max(worst, std::abs(a.y[i] - b.y[j]));
      }
      ++i;
      ++j;
    } else if (xa < xb) {
      ++i;
    } else {
      ++j;
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("analytic resolvent oracle on both solver paths") {
  const double L = 15.0;
  const int n = 6000;
  const auto coeff = Coefficient::constant(1.0);
  const auto f = ForcingTerm::exp_abs(1.0);
  const auto fss = compute_fss(coeff, L, n);

  const auto green = solve_green(coeff, fss, f, 2.0);
  const auto fd = solve_fd(coeff, f, L, n, 2.0);
  CHECK(sup_error_interior(green, L, resolvent_oracle) <= 1e-4);
  CHECK(sup_error_interior(fd, L, resolvent_oracle) <= 1e-4);
  CHECK(green.residual_norm <= green.residual_tol);
  CHECK(fd.residual_norm <= fd.residual_tol);
}

TEST_CASE("zero forcing gives the zero solution") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 10.0, 500);
  const auto green = solve_green(coeff, fss, ForcingTerm::zero(), 2.0);
  const auto fd = solve_fd(coeff, ForcingTerm::zero(), 10.0, 500, 2.0);
  for (double yi : green.y) CHECK(yi == 0.0);
  for (double yi : fd.y) CHECK(yi == 0.0);
  CHECK(green.norms.lp == 0.0);
  CHECK(fd.norms.lp == 0.0);
}

TEST_CASE("solver paths agree for every built-in pair") {
  const double L = 15.0;
  const int n = 4000;
  const Coefficient coeffs[] = {Coefficient::constant(1.0),
                                Coefficient::cos_power(1.0),
                                Coefficient::spike_lattice(1.5, 1.0)};
  const ForcingTerm forcings[] = {
      ForcingTerm::exp_abs(1.0), ForcingTerm::gaussian(0.0, 1.0),
      ForcingTerm::gaussian(2.0, 2.0), ForcingTerm::compact_bump(0.0, 2.0)};
  for (const auto& coeff : coeffs) {
    const auto fss = compute_fss(coeff, L, n);
    for (const auto& f : forcings) {
      const auto green = solve_green(coeff, fss, f, 2.0);
      const auto fd = solve_fd(coeff, f, L, n, 2.0);
      CHECK(cross_deviation(green, fd, L) <= 1e-4);
    }
  }
}

TEST_CASE("finite differences converge at second order") {
  // Manufactured solution y = e^{-x^2} for q = 1: f = (3 - 4x^2) e^{-x^2}.
  const double L = 15.0;
  const auto coeff = Coefficient::constant(1.0);
  const auto grid = linspace(-L, L, 200001);
  std::vector<double> fv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    fv[i] = (3.0 - 4.0 * x * x) * std::exp(-x * x);
  }
  const auto f = ForcingTerm::sampled(grid, fv);

  const auto exact = [](double x) { return std::exp(-x * x); };
  double errors[2];
  const int ns[] = {1500, 3000};
  for (int k = 0; k < 2; ++k) {
    const auto fd = solve_fd(coeff, f, L, ns[k], 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < fd.grid.size(); ++i) {
      worst = std::max(worst, std::abs(fd.y[i] - exact(fd.grid[i])));
    }
    errors[k] = worst;
  }
  // Halving h should cut the error by about 4; accept [2.5, 6].
  CHECK(errors[0] / errors[1] > 2.5);
  CHECK(errors[0] / errors[1] < 6.0);
}

TEST_CASE("vanishing coefficient: double primitive against the exact hat") {
  // -y'' = f with f a unit top-hat on [-1, 1] and zero ends at +-L:
  // y = cL - x^2/2 - (c^2 - c^2)/... piecewise parabola/linear profile.
  const double L = 15.0;
  const double c = 1.0;
  const int n = 6000;  // h = 0.005, hat edges land on nodes
  const auto coeff = Coefficient::constant(0.0);
  const double h = 2.0 * L / n;
  const auto f = ForcingTerm::sampled(
      {-c - h, -c, c, c + h}, {0.0, 1.0, 1.0, 0.0});

  const auto fd = solve_fd(coeff, f, L, n, 2.0);
  CHECK(!fd.warnings.empty());  // conditioning note for q == 0

  // Integrating the ideal hat twice by hand: y = cL - c^2/2 - x^2/2 inside
  // the hat and y = c (L - |x|) on the flanks.
  const auto exact = [&](double x) {
    const double a = std::abs(x);
    if (a <= c) return c * L - 0.5 * c * c - 0.5 * x * x;
    return c * (L - a);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < fd.grid.size(); ++i) {
    worst = std::max(worst, std::abs(fd.y[i] - exact(fd.grid[i])));
  }
  // The sampled hat has O(h) ramps, so allow a relative slack of 0.5%.
  CHECK(worst <= 5e-3 * (c * L - 0.5 * c * c));
}

TEST_CASE("kernel positivity carries to the solution") {
  const auto coeff = Coefficient::cos_power(1.0);
  const auto fss = compute_fss(coeff, 12.0, 2000);
  const auto green =
      solve_green(coeff, fss, ForcingTerm::gaussian(1.0, 1.5), 2.0);
  for (double yi : green.y) CHECK(yi >= -1e-14);
}

TEST_CASE("solvability constant for constant weights") {
  const double L = 15.0;
  const int n = 3000;
  std::vector<ForcingTerm> family = {
      ForcingTerm::gaussian(0.0, 0.5), ForcingTerm::gaussian(-2.0, 1.0),
      ForcingTerm::gaussian(3.0, 2.0), ForcingTerm::zero()};

  for (double q0 : {1.0, 4.0}) {
    const auto coeff = Coefficient::constant(q0);
    const auto fss = compute_fss(coeff, L, n);
    std::vector<SolveResult> results;
    std::vector<double> f_norms;
    for (const auto& f : family) {
      results.push_back(solve_green(coeff, fss, f, 2.0));
      f_norms.push_back(results.back().norms.forcing);
    }
    const double c_hat = check_correct_solvability_constant(results, f_norms);
    // Frequency response 1/(q0 + xi^2) caps the ratio at 1/q0.
    CHECK(c_hat <= 1.0 / q0 + 1e-9);
    CHECK(c_hat > 0.0);
  }
}

TEST_CASE("empty batch after skipping zero forcings is rejected") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 5.0, 200);
  std::vector<SolveResult> results = {
      solve_green(coeff, fss, ForcingTerm::zero(), 2.0)};
  std::vector<double> f_norms = {0.0};
  CHECK_THROWS_WITH_AS(check_correct_solvability_constant(results, f_norms),
                       "no admissible samples", std::invalid_argument);
}

TEST_CASE("weighted estimate ratio") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 15.0, 3000);
  const auto r = solve_green(coeff, fss, ForcingTerm::gaussian(0.0, 1.0), 2.0);
  const auto ratio = check_weighted_estimate(r, r.norms.forcing);
  REQUIRE(ratio.has_value());
  // q == 1 makes the weighted norm equal the plain norm.
  CHECK(*ratio == doctest::Approx(r.norms.lp / r.norms.forcing));
  CHECK(*ratio <= 1.0 + 1e-9);
  CHECK_FALSE(check_weighted_estimate(r, 0.0).has_value());
}

TEST_CASE("truncation warning when forcing mass reaches the boundary") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 15.0, 2000);
  const auto centered =
      solve_green(coeff, fss, ForcingTerm::gaussian(0.0, 1.0), 2.0);
  CHECK(centered.warnings.empty());
  const auto edge =
      solve_green(coeff, fss, ForcingTerm::gaussian(14.0, 2.0), 2.0);
  CHECK(!edge.warnings.empty());
}

TEST_CASE("norm records agree with the norm module on the same tracks") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 15.0, 3000);
  const auto r = solve_green(coeff, fss, ForcingTerm::exp_abs(1.0), 2.0);
  const auto g = r.as_grid_function();
  CHECK(w_norm(g, coeff, 2.0) ==
        doctest::Approx(r.norms.lp_ddy + r.norms.lp_qy).epsilon(1e-12));
  CHECK(s_norm(g, coeff, 2.0) ==
        doctest::Approx(r.norms.lp_defect + r.norms.lp_weighted)
            .epsilon(1e-12));
  // The equation identity makes ||y'' - q y||_p exactly the forcing norm.
  CHECK(r.norms.lp_defect == doctest::Approx(r.norms.forcing).epsilon(1e-12));
}

TEST_CASE("oracle error is small in relative terms on the core region") {
  const auto coeff = Coefficient::constant(1.0);
  const auto fss = compute_fss(coeff, 15.0, 6000);
  const auto green = solve_green(coeff, fss, ForcingTerm::exp_abs(1.0), 2.0);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < green.grid.size(); ++i) {
    const double x = green.grid[i];
    if (std::abs(x) > 5.0) continue;
    const double exact = resolvent_oracle(x);
    worst_rel = std::max(worst_rel, std::abs(green.y[i] - exact) / exact);
  }
  CHECK(worst_rel <= 1e-4);
}

TEST_CASE("doubling the truncation length leaves the FD solution in place") {
  const auto coeff = Coefficient::constant(1.0);
  const auto f = ForcingTerm::exp_abs(1.0);
  const auto small = solve_fd(coeff, f, 15.0, 6000, 2.0);
  const auto wide = solve_fd(coeff, f, 30.0, 12000, 2.0);  // same h
  double worst = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < small.grid.size(); ++i) {
    if (std::abs(small.grid[i]) > 10.0) continue;
    while (j < wide.grid.size() && wide.grid[j] < small.grid[i] - 1e-9) ++j;
    if (j < wide.grid.size() &&
        std::abs(wide.grid[j] - small.grid[i]) <= 1e-9) {
      worst = std::max(worst, std::abs(small.y[i] - wide.y[j]));
    }
  }
  CHECK(worst <= 1e-6);  // boundary truncation decays like e^{-L}
}

TEST_CASE("prefix-sum solve matches direct kernel quadrature") {
  // The O(n) prefix-sum evaluation is a rearrangement of the trapezoid sum
  // of G(x, t) f(t) when x is a node; check against the brute-force sum.
  const auto coeff = Coefficient::cos_power(1.0);
  const auto fss = compute_fss(coeff, 10.0, 800);
  const auto f = ForcingTerm::gaussian(0.5, 1.0);
  const auto green = solve_green(coeff, fss, f, 2.0);
  const auto& x = fss.grid;
  for (std::size_t i : {std::size_t{0}, x.size() / 4, x.size() / 2,
                        3 * x.size() / 4, x.size() - 1}) {
    double direct = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
      const double h = x[j + 1] - x[j];
      direct += 0.5 * h *
                (greens_kernel(fss, x[i], x[j]) * f.eval(x[j]) +
                 greens_kernel(fss, x[i], x[j + 1]) * f.eval(x[j + 1]));
    }
    CHECK(green.y[i] == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("weighted estimate stays finite on and off the spikes") {
  const auto coeff = Coefficient::spike_lattice(1.5, 1.0);
  const auto fss = compute_fss(coeff, 15.0, 4000);
  const auto on_spike =
      solve_green(coeff, fss, ForcingTerm::compact_bump(3.0, 0.25), 2.0);
  const auto off_spike =
      solve_green(coeff, fss, ForcingTerm::compact_bump(3.5, 0.25), 2.0);
  const auto r_on = check_weighted_estimate(on_spike, on_spike.norms.forcing);
  const auto r_off =
      check_weighted_estimate(off_spike, off_spike.norms.forcing);
  REQUIRE(r_on.has_value());
  REQUIRE(r_off.has_value());
  CHECK(std::isfinite(*r_on));
  CHECK(std::isfinite(*r_off));
  CHECK(*r_on > 0.0);
  CHECK(*r_off > 0.0);
}
