#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sturm/coefficient.hpp"

namespace sturm {

// Outcome of probing the two one-sided mass conditions
// integral_{-inf}^{x} q > 0 and integral_{x}^{inf} q > 0 on a truncated range.
enum class TailStatus {
  Holds,
  FailsLeft,
  FailsRight,
  FailsBoth,
  Inconclusive,
};

struct TailProbe {
  TailStatus status = TailStatus::Inconclusive;
  double probe_bound = 0.0;
  double left_min = 0.0;   // smallest probed left-tail integral
  double right_min = 0.0;  // smallest probed right-tail integral
};

const char* to_string(TailStatus s);

// Probes tail positivity on [-probe_bound, probe_bound].  A tail integral
// below fail_eps at the extreme probe counts as failed; both tails above
// hold_margin at every probe counts as held; anything between is
// inconclusive.
TailProbe check_tail_positivity(const Coefficient& coeff, double probe_bound,
                                double fail_eps = 1e-12,
                                double hold_margin = 1e-8);

// Unique positive root of F(d) = d * I(x, d) - 2 (bracket doubling followed
// by bisection; F is nondecreasing in d, flat at -2 while the window has not
// reached the support of q, so no special casing is needed near gaps).
// Throws NoFiniteRootError when the bracket cap is exceeded and
// ToleranceError when bisection stalls above root_tol.
double d_of_x(const Coefficient& coeff, double x, double root_tol = 1e-9,
              double bracket_cap = 1099511627776.0 /* 2^40 */);

// Grid minimum of I(x, a) over x_grid: an upper estimate of the window
// infimum over the whole line (deterministic for a fixed grid).
double m_of_a(const Coefficient& coeff, double a,
              const std::vector<double>& x_grid);

enum class Verdict { CorrectlySolvable, NotSolvable, Inconclusive };

const char* to_string(Verdict v);

struct ProfileEvidence {
  TailProbe tail;
  double positivity_margin = 1e-8;
  std::optional<double> margin_a;      // first a whose m estimate beat the margin
  std::optional<double> growth_ratio;  // max d (outer 10%) / median d (inner 50%)
  bool growth_flag = false;
  std::vector<double> failed_x;        // grid points where no finite d was found
  std::string summary;
};

struct MTableEntry {
  double a = 0.0;
  double m_estimate = 0.0;
};

struct OtelbaevProfile {
  std::vector<double> x_grid;   // points where the root was found
  std::vector<double> d_values; // matching roots, |d*I(x,d) - 2| <= root_tol
  double d0_estimate = 0.0;     // max of d_values (lower bound for the sup)
  std::vector<MTableEntry> m_table;
  Verdict verdict = Verdict::Inconclusive;
  ProfileEvidence evidence;
  double root_tol = 1e-9;
};

struct ProfileOptions {
  double root_tol = 1e-9;
  double positivity_margin = 1e-8;
  double growth_ratio_threshold = 2.0;
  std::optional<double> probe_bound;  // default: max(|x_lo|, |x_hi|, 1)
  int workers = 1;
};

// Sweeps d(x) over a uniform grid on [x_lo, x_hi], estimates d0 and m(a) for
// each requested a, and issues a verdict with the supporting evidence.
// The sweep is deterministic regardless of the worker count.
OtelbaevProfile build_profile(const Coefficient& coeff, double x_lo,
                              double x_hi, int n_points,
                              const std::vector<double>& a_list,
                              const ProfileOptions& opts = {});

// Growth heuristic shared with the experiment sweeps: max of d over the outer
// 10% of the x-range against the median of d over the inner 50%.
std::optional<double> growth_ratio(const std::vector<double>& x,
                                   const std::vector<double>& d, double x_lo,
                                   double x_hi);

}  // namespace sturm
