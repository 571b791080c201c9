#pragma once

#include <vector>

#include "sturm/coefficient.hpp"

namespace sturm {

// Grid over [lo, hi]: uniform base of n_steps panels with the coefficient's
// breakpoints (and any extra nodes) inserted, so integration steps never
// straddle a jump or kink of q.
std::vector<double> aligned_grid(const Coefficient& coeff, double lo,
                                 double hi, int n_steps,
                                 const std::vector<double>& extra = {});

// One RK4 step of z'' = q(t) z across the panel [t0, t1] (t1 may be < t0 for
// backward integration).  Stage evaluations of q are clamped slightly inside
// the panel so endpoint nodes that sit exactly on a breakpoint take the
// one-sided value belonging to this panel.
void rk4_linear_step(const Coefficient& coeff, double t0, double t1, double& z,
                     double& dz);

// Same panel step for the log-space form: w = log z, s = z'/z with
// w' = s, s' = q - s^2.
void rk4_log_step(const Coefficient& coeff, double t0, double t1, double& w,
                  double& s);

}  // namespace sturm
