#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sturm {

// Built-in coefficient families.  All represent a nonnegative, locally
// integrable weight q(x) on the real line.

struct Constant {
  double q0 = 1.0;
};

// q(x) = 1 + cos(|x|^theta), theta > 0.  Oscillates in [0, 2]; the
// oscillation slows (theta < 1) or speeds up (theta > 1) along the axis.
struct CosPower {
  double theta = 1.0;
};

// q = 1 off a lattice of shrinking intervals; on w_n = [n - n^-alpha,
// n + n^-alpha] (n = 2..n_max) the value jumps to n^beta.  Requires
// 0 < beta < alpha and pairwise-disjoint intervals.
struct SpikeLattice {
  double alpha = 1.5;
  double beta = 1.0;
  int n_max = 4096;
};

// Step function: values[i] on (breakpoints[i-1], breakpoints[i]), with
// values.front() on the left tail and values.back() on the right tail.
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;  // size = breakpoints.size() + 1
};

// Piecewise-linear interpolant of nonnegative samples; defined only on the
// sample hull.
struct SampledCoefficient {
  std::vector<double> grid;
  std::vector<double> values;
};

// How window integrals are evaluated.
struct WindowIntegralMethod {
  enum class Kind { Antiderivative, AdaptiveQuadrature };
  Kind kind = Kind::Antiderivative;
  double abs_tol = 1e-10;
  int max_depth = 48;

  static WindowIntegralMethod antiderivative() { return {}; }
  static WindowIntegralMethod adaptive(double abs_tol, int max_depth = 48);
};

// The weight q(x) >= 0 together with exact-as-possible window integrals
// I(x, d) = integral of q over [x-d, x+d].  Immutable after construction;
// all member functions are const and safe to call concurrently.
class Coefficient {
 public:
  using Spec =
      std::variant<Constant, CosPower, SpikeLattice, PiecewiseConstant,
                   SampledCoefficient>;

  explicit Coefficient(Spec spec);

  static Coefficient constant(double q0);
  static Coefficient cos_power(double theta);
  static Coefficient spike_lattice(double alpha, double beta, int n_max = 4096);
  static Coefficient piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values);
  static Coefficient sampled(std::vector<double> grid,
                             std::vector<double> values);

  // q(x).  Sampled coefficients reject x outside the sample hull
  // (std::domain_error).
  double eval(double x) const;

  // Definite integral of q over [a, b] (a <= b or reversed; result is signed
  // accordingly).  Uses the closed-form antiderivative when available,
  // adaptive Simpson otherwise.
  double integrate(double a, double b) const;

  // I(x, d), d >= 0, with the default method for this family.
  double window_integral(double x, double d) const;
  double window_integral(double x, double d,
                         const WindowIntegralMethod& method) const;

  // True when integrate() is exact (closed-form antiderivative).
  bool has_antiderivative() const;

  // Discontinuity / kink locations inside (a, b), sorted.  Integrators align
  // steps to these.
  std::vector<double> breakpoints_in(double a, double b) const;

  // Sample hull for Sampled coefficients; nullopt for whole-line families.
  std::optional<std::pair<double, double>> domain_hull() const;

  // Canonical spec string, e.g. "cospower:0.5"; parseable by parse().
  std::string describe() const;

  // Parses "kind:params" or a JSON object string ({"kind": ...}).
  static Coefficient parse(const std::string& text);

  const Spec& spec() const { return spec_; }

 private:
  double quadrature_integral(double a, double b, double abs_tol,
                             int max_depth) const;
  double antiderivative(double x) const;
  double cos_phase_integral(double a, double b, double abs_tol,
                            int max_depth) const;

  Spec spec_;
  // SpikeLattice: prefix[n] = sum over k in [2, n] of (k^beta - 1) * |w_k|.
  std::vector<double> spike_prefix_;
  // PiecewiseConstant / Sampled: antiderivative values at the nodes.
  std::vector<double> node_antiderivative_;
};

}  // namespace sturm
