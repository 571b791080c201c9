#pragma once

#include "sturm/coefficient.hpp"
#include "sturm/grid_function.hpp"

namespace sturm {

// Composite-trapezoid approximation of (integral |g|^p)^(1/p), p >= 1.
// Zero exactly when all sampled values vanish.
double lp_norm(const GridFunction& g, double p);

// Trapezoid rule over arbitrary value arrays sharing g's grid.
double lp_norm(const std::vector<double>& grid,
               const std::vector<double>& values, double p);

// ||y''||_p + ||q y||_p.  Requires the second-derivative track.
double w_norm(const GridFunction& y, const Coefficient& coeff, double p);

// ||y'' - q y||_p + ||q^(1/p) y||_p.  Requires the second-derivative track.
double s_norm(const GridFunction& y, const Coefficient& coeff, double p);

// Share of the integral of |g|^p carried by the outer 5% of the grid span on
// either end (max of the two sides).  Used as a truncation-honesty check:
// values above ~1e-6 mean the domain cut off visible mass.
double boundary_mass_fraction(const GridFunction& g, double p);

}  // namespace sturm
