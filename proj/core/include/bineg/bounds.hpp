#pragma once

// Closed-form bound curves relating concurrence c, negativity nu and
// binegativity of two-qubit states. All functions are pure.

namespace bineg {

// Minimum negativity at concurrence c: sqrt((1-c)^2 + c^2) - (1-c).
double nu_of_c(double c);
// Inverse of nu_of_c: sqrt(2 nu (nu + 1)) - nu.
double c_of_nu(double nu);

// Binegativity of sigma_mems(c).
double bineg_mems(double c);
// Conjectured minimum binegativity at negativity nu: bineg_mems(c_of_nu(nu)).
double bineg_lower_given_nu(double nu);

struct RegionBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Unchecked evaluation of the conjectured (c, nu) region bounds. Valid for
// 0 < nu <= c; used by sweeps on states that may sit marginally outside the
// feasible set.
double region_lower_formula(double c, double nu);
double region_upper_formula(double c, double nu);

// Checked version: throws InfeasibleRegion unless nu_c(c) <= nu <= c.
RegionBounds region_bounds(double c, double nu);

struct BoundaryRange {
  double p_min = 0.0;
  double p_max = 0.0;
};

// Range of p for which the (q_p, r_p) boundary family has concurrence c and
// negativity nu. Requires nu_c(c) <= nu < c; throws InfeasibleRegion.
BoundaryRange boundary_p_range(double c, double nu);

// Binegativity of the boundary family at p. Throws InfeasibleRegion or
// OutOfRange outside the family's domain.
double boundary_bineg(double c, double nu, double p);

// True when nu_c(c) - slack <= nu <= c + slack with 0 < nu, c <= 1.
bool region_feasible(double c, double nu, double slack = 1e-12);

}  // namespace bineg
