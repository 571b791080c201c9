#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sturm/coefficient.hpp"
#include "sturm/norms.hpp"

using namespace sturm;

TEST_CASE("lp norm of the zero function is zero") {
  GridFunction g;
  g.grid = linspace(-3.0, 7.0, 100);
  g.values.assign(g.grid.size(), 0.0);
  CHECK(lp_norm(g, 1.0) == 0.0);
  CHECK(lp_norm(g, 2.5) == 0.0);
}

TEST_CASE("lp norm closed forms") {
  // ||e^{-|x|}||_2 = 1; node at 0 keeps the kink exact to O(h^2).
  GridFunction g;
  g.grid = linspace(-20.0, 20.0, 40001);
  g.values.resize(g.grid.size());
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    g.values[i] = std::exp(-std::abs(g.grid[i]));
  }
  CHECK(lp_norm(g, 2.0) == doctest::Approx(1.0).epsilon(1e-6));

  // Top-hat of height 1 over an interval of length 2, p = 3.
  GridFunction h;
  h.grid = linspace(-2.0, 2.0, 400001);
  h.values.resize(h.grid.size());
  for (std::size_t i = 0; i < h.grid.size(); ++i) {
    h.values[i] = std::abs(h.grid[i]) < 1.0 ? 1.0 : 0.0;
  }
  CHECK(lp_norm(h, 3.0) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-5));
}

TEST_CASE("homogeneity and triangle inequality") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> vals(-5.0, 5.0);
  std::uniform_real_distribution<double> lambdas(-3.0, 3.0);
  const auto grid = linspace(0.0, 1.0, 257);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> a(grid.size()), b(grid.size()), sum(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      a[i] = vals(rng);
      b[i] = vals(rng);
      sum[i] = a[i] + b[i];
    }
    const double lambda = lambdas(rng);
    std::vector<double> scaled(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) scaled[i] = lambda * a[i];
    for (double p : {1.0, 2.0, 3.5}) {
      CHECK(lp_norm(grid, scaled, p) ==
            doctest::Approx(std::abs(lambda) * lp_norm(grid, a, p))
                .epsilon(1e-12));
      CHECK(lp_norm(grid, sum, p) <=
            lp_norm(grid, a, p) + lp_norm(grid, b, p) + 1e-12);
    }
  }
}

TEST_CASE("w and s norms require the second-derivative track") {
  GridFunction g;
  g.grid = linspace(0.0, 1.0, 10);
  g.values.assign(10, 1.0);
  const auto coeff = Coefficient::constant(1.0);
  CHECK_THROWS_AS(w_norm(g, coeff, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(s_norm(g, coeff, 2.0), std::invalid_argument);
}

TEST_CASE("w and s norms on a synthetic function") {
  // y = 0 gives zero in both norms.
  GridFunction zero;
  zero.grid = linspace(-1.0, 1.0, 33);
  zero.values.assign(33, 0.0);
  zero.d2 = std::vector<double>(33, 0.0);
  const auto coeff = Coefficient::constant(1.0);
  CHECK(w_norm(zero, coeff, 2.0) == 0.0);
  CHECK(s_norm(zero, coeff, 2.0) == 0.0);

  // q = 1, p = 2: s <= 2 w by the triangle inequality with q^(1/2) y = q y = y.
  GridFunction g;
  g.grid = linspace(-5.0, 5.0, 2001);
  g.values.resize(g.grid.size());
  std::vector<double> d2(g.grid.size());
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    const double x = g.grid[i];
    g.values[i] = std::exp(-x * x);
    d2[i] = (4.0 * x * x - 2.0) * std::exp(-x * x);
  }
  g.d2 = d2;
  CHECK(s_norm(g, coeff, 2.0) <= 2.0 * w_norm(g, coeff, 2.0) + 1e-12);
}

TEST_CASE("p = 1 band between the two norms holds for arbitrary tracks") {
  // At p = 1 the weighted term equals the q-weighted value track, so the
  // two norms control each other within a factor of 2 pointwise.
  std::mt19937 rng(9001);
  std::uniform_real_distribution<double> vals(-2.0, 2.0);
  const auto grid = linspace(-4.0, 4.0, 401);
  const Coefficient coeffs[] = {Coefficient::constant(0.5),
                                Coefficient::cos_power(1.0),
                                Coefficient::spike_lattice(1.5, 1.0)};
  for (const auto& coeff : coeffs) {
    for (int trial = 0; trial < 20; ++trial) {
      GridFunction g;
      g.grid = grid;
      g.values.resize(grid.size());
      std::vector<double> d2(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        g.values[i] = vals(rng);
        d2[i] = vals(rng);
      }
      g.d2 = d2;
      const double w = w_norm(g, coeff, 1.0);
      const double s = s_norm(g, coeff, 1.0);
      if (w == 0.0) continue;
      CHECK(s / w >= 0.5 - 1e-12);
      CHECK(s / w <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("boundary mass fraction flags heavy tails") {
  GridFunction centered;
  centered.grid = linspace(-10.0, 10.0, 2001);
  centered.values.resize(centered.grid.size());
  for (std::size_t i = 0; i < centered.grid.size(); ++i) {
    centered.values[i] = std::exp(-centered.grid[i] * centered.grid[i]);
  }
  CHECK(boundary_mass_fraction(centered, 2.0) < 1e-12);

  GridFunction shifted = centered;
  for (std::size_t i = 0; i < shifted.grid.size(); ++i) {
    const double t = shifted.grid[i] - 9.5;
    shifted.values[i] = std::exp(-t * t);
  }
  CHECK(boundary_mass_fraction(shifted, 2.0) > 0.3);
}

TEST_CASE("weight locality: a bump clear of every spike sees q = 1") {
  const auto coeff = Coefficient::spike_lattice(1.5, 1.0);
  // Support [12.3, 12.7] avoids the spikes at 12 and 13 (half-widths < 0.03).
  GridFunction g;
  g.grid = linspace(12.3, 12.7, 801);
  g.values.resize(g.grid.size());
  std::vector<double> qy(g.grid.size());
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    const double t = (g.grid[i] - 12.5) / 0.2;
    g.values[i] = std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    qy[i] = coeff.eval(g.grid[i]) * g.values[i];
  }
  CHECK(lp_norm(g.grid, qy, 2.0) == doctest::Approx(lp_norm(g, 2.0)));
}
