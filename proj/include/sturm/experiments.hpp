#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sturm/coefficient.hpp"
#include "sturm/otelbaev.hpp"
#include "sturm/solver.hpp"
#include "sturm/test_functions.hpp"

namespace sturm {

struct LabeledRatio {
  std::string label;
  double ratio = 0.0;
};

// Fixed deterministic probe set: 12 Gaussians of varied center/width plus 8
// compact bumps.
std::vector<ForcingTerm> default_forcing_family();

struct ProbeOptions {
  double L = 15.0;
  int n_steps = 6000;
};

// Largest ||y||_p / (||y''-qy||_p + ||q^(1/p)y||_p) over Green solves of the
// family: an empirical lower bound for the embedding constant.  Throws
// std::invalid_argument when no forcing leaves a nonzero denominator.
double embedding_constant(const Coefficient& coeff, double p,
                          const std::vector<ForcingTerm>& family,
                          const ProbeOptions& opts = {});

// (||y''||_p + ||qy||_p) / ||f||_p per forcing.  A bounded series is
// evidence of separability; growth is evidence against.
std::vector<LabeledRatio> separability_probe(
    const Coefficient& coeff, double p, const std::vector<ForcingTerm>& family,
    const ProbeOptions& opts = {});

// s-norm / w-norm of the solution per forcing (the norm-equivalence
// surrogate: bounded away from 0 and infinity means the spaces behave as
// isomorphic on the probe set).
std::vector<LabeledRatio> norm_equivalence_probe(
    const Coefficient& coeff, double p, const std::vector<ForcingTerm>& family,
    const ProbeOptions& opts = {});

// ||y_n||_p / s_norm(y_n) for the scaled cutting bumps centered at each n.
// Against a weight whose tail mass vanishes this grows like n^2, witnessing
// the failure of the embedding.
std::vector<LabeledRatio> witness_embedding_ratios(const Coefficient& coeff,
                                                   double p,
                                                   const std::vector<int>& ns);

// ---------------------------------------------------------------------------
// Packaged studies.

struct CosPowerStudyRow {
  double theta = 0.0;
  double x_max = 0.0;
  double m_estimate = 0.0;
  double d_max = 0.0;
  std::optional<double> growth_ratio;
  bool growth_flag = false;
};

struct CosPowerOutcome {
  double theta = 0.0;
  bool m_strictly_decreasing = false;  // across successive x_max
  double m_rel_change = 0.0;           // |m_last - m_first| / m_first
  bool stabilized = false;             // m_rel_change < stabilize_tol
  bool growth_flag = false;            // from the widest domain
  bool matches_threshold = false;      // observed outcome vs theta >= 1
};

struct CosPowerStudy {
  double a = 1.0;
  std::vector<CosPowerStudyRow> rows;
  std::vector<CosPowerOutcome> outcomes;
  bool all_match = false;
};

struct CosPowerStudyOptions {
  double a = 1.0;
  double root_tol = 1e-6;
  double stabilize_tol = 0.05;
  double growth_ratio_threshold = 2.0;
};

// Sweeps q = 1 + cos(|x|^theta) over expanding domains [0, X]: reports the
// window-infimum estimate m(a), the largest Otelbaev value, and the d-growth
// flag per (theta, X).  Sample grids are nested across the X list so the m
// estimates can only decrease under domain extension.
CosPowerStudy cospower_threshold_study(const std::vector<double>& theta_list,
                                       const std::vector<double>& x_max_list,
                                       const CosPowerStudyOptions& opts = {});

struct DiagnosticsReport {
  std::string coefficient;
  double p = 2.0;
  double embedding_constant_estimate = 0.0;
  std::vector<LabeledRatio> separability_ratio_series;  // cell-scale bumps
  std::vector<LabeledRatio> separability_narrow_series; // spike-width bumps
  std::vector<LabeledRatio> norm_equivalence_series;
  Verdict verdict = Verdict::Inconclusive;
  double d0_estimate = 0.0;
  std::string profile_summary;
  int window_checks_passed = 0;
  int window_checks_total = 0;
  bool adverse_separability_trend = false;  // last-half max > first-half max
  bool norm_equivalence_bounded = false;
  double separability_band = 0.0;      // max/min over the primary series
  double norm_equivalence_band = 0.0;  // max/min over the equivalence series
};

struct SpikeStudyOptions {
  int n_lo = 2;
  int n_hi = 20;
  double L = 30.0;
  int n_steps = 9000;
  double bounded_band_threshold = 10.0;
};

// Full diagnostics for the spiked-lattice weight: solvability profile,
// embedding constant over the default family, separability and
// norm-equivalence series over bumps centered on the spikes.  Requires
// 0 < beta < alpha < p*beta; violations are rejected with the constraint
// echoed.
DiagnosticsReport spike_lattice_study(double alpha, double beta, double p,
                                      const SpikeStudyOptions& opts = {});

}  // namespace sturm
