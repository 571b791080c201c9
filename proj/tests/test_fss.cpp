#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sturm/coefficient.hpp"
#include "sturm/errors.hpp"
#include "sturm/fss.hpp"

using namespace sturm;

namespace {

const Coefficient kFamilies[] = {Coefficient::constant(1.0),
                                 Coefficient::cos_power(1.0),
                                 Coefficient::spike_lattice(1.5, 1.0)};

}  // namespace

TEST_CASE("wronskian stays pinned to 1 across the grid") {
  for (const auto& coeff : kFamilies) {
    const auto fss = compute_fss(coeff, 20.0, 8000);
    CHECK(fss.wronskian_drift <= 1e-6);
    for (std::size_t i = 0; i < fss.grid.size(); ++i) {
      CHECK(std::abs(fss.dv[i] * fss.u[i] - fss.du[i] * fss.v[i] - 1.0) <=
            1e-6);
    }
  }
}

TEST_CASE("sign pattern of the pair") {
  for (const auto& coeff : kFamilies) {
    const auto fss = compute_fss(coeff, 20.0, 8000);
    for (std::size_t i = 0; i < fss.grid.size(); ++i) {
      CHECK(fss.u[i] > 0.0);
      CHECK(fss.v[i] > 0.0);
      CHECK(fss.du[i] <= 1e-12);
      CHECK(fss.dv[i] >= -1e-12);
    }
  }
}

TEST_CASE("u/v decreases along the axis") {
  for (const auto& coeff : kFamilies) {
    const auto fss = compute_fss(coeff, 20.0, 4000);
    double prev = fss.u.front() / fss.v.front();
    for (std::size_t i = 1; i < fss.grid.size(); ++i) {
      const double cur = fss.u[i] / fss.v[i];
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
    CHECK(fss.u.back() / fss.v.back() < 1e-10 * fss.u.front() / fss.v.front());
  }
}

TEST_CASE("constant weight: normalized product and exponential kernel") {
  const auto fss = compute_fss(Coefficient::constant(1.0), 20.0, 8000);
  for (std::size_t i = 0; i < fss.grid.size(); i += 97) {
    CHECK(fss.u[i] * fss.v[i] == doctest::Approx(0.5).epsilon(1e-10));
  }
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double x = -5.0 + 10.0 * i / 49.0 + 1.3e-3;
      const double t = -5.0 + 10.0 * j / 49.0 - 0.7e-3;
      const double exact = std::exp(-std::abs(x - t)) / 2.0;
      worst = std::max(worst,
                       std::abs(greens_kernel(fss, x, t) - exact) / exact);
    }
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("kernel symmetry and positivity on random pairs") {
  const auto fss = compute_fss(Coefficient::spike_lattice(1.5, 1.0), 20.0, 4000);
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> pts(-20.0, 20.0);
  for (int k = 0; k < 200; ++k) {
    const double x = pts(rng);
    const double t = pts(rng);
    const double g = greens_kernel(fss, x, t);
    CHECK(g == greens_kernel(fss, t, x));
    CHECK(g >= 0.0);
  }
  // G(x, x) = u v > 0
  CHECK(greens_kernel(fss, 1.234, 1.234) > 0.0);
}

TEST_CASE("kernel rejects arguments outside the hull") {
  const auto fss = compute_fss(Coefficient::constant(1.0), 5.0, 200);
  CHECK_THROWS_AS(greens_kernel(fss, 5.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(greens_kernel(fss, 0.0, -5.1), std::domain_error);
}

TEST_CASE("log-space fallback for wide stiff domains") {
  // exp(3x) spans e^720 over [-120, 120]: the linear pass overflows, the
  // log-space pass reconstructs values centered at the midpoint.
  const auto fss = compute_fss(Coefficient::constant(9.0), 120.0, 24000);
  CHECK(fss.log_space);
  CHECK(fss.wronskian_drift <= 1e-6);
  for (int i = 0; i < 20; ++i) {
    const double x = -2.0 + 4.0 * i / 19.0;
    const double t = 0.3 * x + 0.1;
    const double exact = std::exp(-3.0 * std::abs(x - t)) / 6.0;
    CHECK(greens_kernel(fss, x, t) == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("hard error when even log space cannot span the range") {
  CHECK_THROWS_AS(compute_fss(Coefficient::constant(16.0), 200.0, 24000),
                  std::overflow_error);
}

TEST_CASE("precondition checks") {
  CHECK_THROWS_AS(compute_fss(Coefficient::constant(1.0), -1.0, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_fss(Coefficient::constant(1.0), 1.0, 4),
                  std::invalid_argument);
}

TEST_CASE("drift beyond the tolerance is a conditioning failure") {
  try {
    compute_fss(Coefficient::constant(1.0), 20.0, 8000,
                {.wronskian_tol = 1e-18, .slope_floor = 1e-6});
    FAIL("expected ConditioningError");
  } catch (const sturm::ConditioningError& err) {
    CHECK(err.drift() > 1e-18);
    CHECK(err.drift() < 1e-6);
  }
}
