#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sturm/coefficient.hpp"
#include "sturm/fss.hpp"
#include "sturm/grid_function.hpp"

namespace sturm {

// Built-in right-hand sides.
struct GaussianForcing {
  double center = 0.0;
  double width = 1.0;  // exp(-((x-c)/w)^2 / 2)
};
struct ExpAbsForcing {
  double scale = 1.0;  // exp(-|x|/scale)
};
struct CompactBumpForcing {
  double center = 0.0;
  double radius = 1.0;  // exp(1 - 1/(1-t^2)) for |t| < 1, else 0
};
struct ZeroForcing {};
struct SampledForcing {
  std::vector<double> grid;
  std::vector<double> values;  // zero outside the sample hull
};

class ForcingTerm {
 public:
  using Spec = std::variant<GaussianForcing, ExpAbsForcing, CompactBumpForcing,
                            ZeroForcing, SampledForcing>;

  explicit ForcingTerm(Spec spec);

  static ForcingTerm gaussian(double center, double width);
  static ForcingTerm exp_abs(double scale);
  static ForcingTerm compact_bump(double center, double radius);
  static ForcingTerm zero();
  static ForcingTerm sampled(std::vector<double> grid, std::vector<double> values);

  double eval(double x) const;
  std::vector<double> kinks_in(double a, double b) const;
  std::string describe() const;
  static ForcingTerm parse(const std::string& text);
  const Spec& spec() const { return spec_; }

 private:
  Spec spec_;
};

enum class SolveMethod { Green, FiniteDifference };

struct NormRecord {
  double lp = 0.0;           // ||y||_p
  double lp_weighted = 0.0;  // ||q^(1/p) y||_p
  double lp_ddy = 0.0;       // ||y''||_p
  double lp_qy = 0.0;        // ||q y||_p
  double lp_defect = 0.0;    // ||y'' - q y||_p
  double forcing = 0.0;      // ||f||_p on the solve grid
};

// Discretized solution.  The second-derivative track is recovered from the
// equation identity y'' = q y - f (never by numerical differentiation), so
// residual_norm measures only how exactly the discrete construction closed
// its own equation: the Green path closes it identically, the FD path up to
// the direct-solver roundoff.
struct SolveResult {
  std::vector<double> grid;
  std::vector<double> y, dy, ddy;
  double p = 2.0;
  SolveMethod method = SolveMethod::Green;
  double residual_norm = 0.0;
  double residual_tol = 0.0;
  NormRecord norms;
  std::vector<std::string> warnings;

  GridFunction as_grid_function() const;
};

struct SolveOptions {
  // Fraction of ||f||_p mass allowed in the outer 5% of the domain before a
  // truncation warning is attached.
  double truncation_warn_fraction = 1e-6;
};

// Quadrature of the kernel representation y(x) = integral G(x,t) f(t) dt on
// the fss grid (prefix-sum composite trapezoid, O(n)).
SolveResult solve_green(const Coefficient& coeff, const FundamentalSystem& fss,
                        const ForcingTerm& f, double p,
                        const SolveOptions& opts = {});

// Independent oracle: three-point finite differences with zero Dirichlet
// values at +-L, cell-averaged coefficient, direct tridiagonal solve.
SolveResult solve_fd(const Coefficient& coeff, const ForcingTerm& f, double L,
                     int n, double p, const SolveOptions& opts = {});

// Largest ||y||_p / ||f||_p over the batch (empirical lower bound for the
// solvability constant).  Entries with vanishing forcing norm are skipped;
// an empty batch after skipping throws std::invalid_argument.
double check_correct_solvability_constant(
    const std::vector<SolveResult>& results, const std::vector<double>& f_norms);

// ||q^(1/p) y||_p / ||f||_p, or nullopt when the forcing norm vanishes.
std::optional<double> check_weighted_estimate(const SolveResult& result,
                                              double f_norm);

}  // namespace sturm
