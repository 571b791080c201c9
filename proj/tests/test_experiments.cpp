#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sturm/experiments.hpp"
#include "sturm/fss.hpp"
#include "sturm/norms.hpp"

using namespace sturm;

TEST_CASE("default forcing family is fixed and labeled") {
  const auto family = default_forcing_family();
  CHECK(family.size() == 20);
  CHECK(family.front().describe().rfind("gaussian:", 0) == 0);
  CHECK(family.back().describe().rfind("bump:", 0) == 0);
}

TEST_CASE("embedding constant estimate for the unit weight") {
  // ||y||_2 <= ||f||_2 <= s-norm, so the estimate sits below 1.
  const double estimate = embedding_constant(
      Coefficient::constant(1.0), 2.0, default_forcing_family());
  CHECK(estimate > 0.0);
  CHECK(estimate <= 1.0 + 1e-9);
}

TEST_CASE("embedding constant rejects an all-zero family") {
  CHECK_THROWS_AS(embedding_constant(Coefficient::constant(1.0), 2.0,
                                     {ForcingTerm::zero()}),
                  std::invalid_argument);
}

TEST_CASE("witness ratios diverge when the right tail is dead") {
  const auto coeff = Coefficient::piecewise_constant({0.0}, {1.0, 0.0});
  const auto series = witness_embedding_ratios(coeff, 2.0, {8, 16, 32, 64});
  REQUIRE(series.size() == 4);
  // q y_n vanishes on the support, so the ratio grows like n^2: doubling n
  // multiplies it by about 4.
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double gain = series[i].ratio / series[i - 1].ratio;
    CHECK(gain > 2.0);
    CHECK(gain < 8.0);
  }
}

TEST_CASE("separability ratios stay low for the unit weight") {
  const auto series = separability_probe(Coefficient::constant(1.0), 2.0,
                                         default_forcing_family());
  REQUIRE(!series.empty());
  for (const auto& e : series) {
    CHECK(e.ratio <= 2.0 + 1e-9);  // ||y''|| <= ||f|| and ||y|| <= ||f||
  }
}

TEST_CASE("bounded oscillation stays separable: ratios capped by q <= 2") {
  const auto series = separability_probe(Coefficient::cos_power(1.0), 2.0,
                                         default_forcing_family());
  for (const auto& e : series) {
    CHECK(e.ratio <= 4.0);  // ||qy|| <= 2||y|| and resolvent bounds
  }
}

TEST_CASE("norm equivalence ratios at p = 1 sit in the exact band") {
  const Coefficient coeffs[] = {Coefficient::constant(1.0),
                                Coefficient::cos_power(1.0),
                                Coefficient::spike_lattice(1.5, 1.0)};
  for (const auto& coeff : coeffs) {
    const auto series =
        norm_equivalence_probe(coeff, 1.0, default_forcing_family());
    for (const auto& e : series) {
      CHECK(e.ratio >= 0.5 - 1e-12);
      CHECK(e.ratio <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("norm equivalence band for the unit weight at p = 2") {
  const auto series = norm_equivalence_probe(Coefficient::constant(1.0), 2.0,
                                             default_forcing_family());
  double lo = 1e300, hi = 0.0;
  for (const auto& e : series) {
    lo = std::min(lo, e.ratio);
    hi = std::max(hi, e.ratio);
  }
  CHECK(hi / lo <= 10.0);
}

TEST_CASE("spike lattice study: solvable, embeddable, adverse separability") {
  const auto report = spike_lattice_study(1.5, 1.0, 2.0);
  CHECK(report.verdict == Verdict::CorrectlySolvable);
  CHECK(std::isfinite(report.embedding_constant_estimate));
  CHECK(report.embedding_constant_estimate > 0.0);
  CHECK(report.adverse_separability_trend);
  CHECK(report.window_checks_passed == report.window_checks_total);
  REQUIRE(report.separability_ratio_series.size() == 19);

  // The cell-scale series grows; the narrow spike-width series does not.
  const auto& cell = report.separability_ratio_series;
  const auto& narrow = report.separability_narrow_series;
  CHECK(cell.back().ratio > cell.front().ratio);
  CHECK(narrow.back().ratio < narrow.front().ratio + 0.05);

  // The equivalence ratio drifts down as the w-norm outgrows the s-norm.
  const auto& eq = report.norm_equivalence_series;
  CHECK(eq.back().ratio < eq.front().ratio);
}

TEST_CASE("spike lattice study enforces the shape constraint") {
  // alpha < p * beta fails: 2 < 1.5 is false.
  CHECK_THROWS_AS(spike_lattice_study(2.0, 1.0, 1.5), std::invalid_argument);
  // beta < alpha fails.
  CHECK_THROWS_AS(spike_lattice_study(1.0, 1.5, 3.0), std::invalid_argument);
}

TEST_CASE("cospower study matches the threshold on a reduced sweep") {
  const auto study = cospower_threshold_study({0.5, 1.5}, {1.0e3, 4.0e3});
  REQUIRE(study.outcomes.size() == 2);
  const auto& slow = study.outcomes[0];
  CHECK(slow.theta == 0.5);
  CHECK(slow.m_strictly_decreasing);
  CHECK(slow.growth_flag);
  const auto& fast = study.outcomes[1];
  CHECK(fast.theta == 1.5);
  CHECK(fast.stabilized);
  CHECK_FALSE(fast.growth_flag);
  CHECK(study.all_match);
}
