#include "bineg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

constexpr double kDomainSlack = 1e-12;

double unit_interval(double x, const char* what) {
  if (!(x >= -kDomainSlack && x <= 1.0 + kDomainSlack)) {
    throw OutOfRange(std::string(what) + ": argument outside [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

double nu_of_c(double c) {
  c = unit_interval(c, "nu_of_c");
  return std::sqrt((1.0 - c) * (1.0 - c) + c * c) - (1.0 - c);
}

double c_of_nu(double nu) {
  nu = unit_interval(nu, "c_of_nu");
  return std::sqrt(2.0 * nu * (nu + 1.0)) - nu;
}

double bineg_mems(double c) {
  c = unit_interval(c, "bineg_mems");
  const double root = std::sqrt((1.0 - c) * (1.0 - c) + c * c);
  const double nu_c = root - (1.0 - c);
  return 0.5 * nu_c * (1.0 + c / root);
}

double bineg_lower_given_nu(double nu) {
  nu = unit_interval(nu, "bineg_lower_given_nu");
  const double c_nu = std::sqrt(2.0 * nu * (nu + 1.0)) - nu;
  return 0.5 * nu * (1.0 + c_nu / std::sqrt((1.0 - c_nu) * (1.0 - c_nu) + c_nu * c_nu));
}

double region_lower_formula(double c, double nu) {
  if (nu <= 0.0) return 0.0;
  const double s = c + nu;
  return nu * s * (nu + 1.0) / (s * s + 2.0 * c * (1.0 - c));
}

double region_upper_formula(double c, double nu) {
  if (nu <= 0.0) return 0.0;
  const double s = c + nu;
  return 0.5 * nu * s * s / (c * c + nu * nu);
}

bool region_feasible(double c, double nu, double slack) {
  if (!(c > 0.0 && c <= 1.0 + slack && nu > 0.0)) return false;
  return nu <= c + slack && nu >= nu_of_c(std::min(c, 1.0)) - slack;
}

RegionBounds region_bounds(double c, double nu) {
  if (!region_feasible(c, nu, kDomainSlack)) {
    throw InfeasibleRegion("region_bounds: requires nu_c(c) <= nu <= c");
  }
  return {region_lower_formula(c, nu), region_upper_formula(c, nu)};
}

BoundaryRange boundary_p_range(double c, double nu) {
  // c == nu collapses the family (p_min = 0, division by p); pure states
  // cover that case.
  if (!region_feasible(c, nu, kDomainSlack) || !(c - nu > kDomainSlack)) {
    throw InfeasibleRegion("boundary family: requires nu_c(c) <= nu < c");
  }
  BoundaryRange range;
  range.p_min = (c * c - nu * nu) / (2.0 * nu);
  range.p_max = c * (nu + 1.0) / (c + nu) - 0.5 * (c + nu);
  // At nu = nu_c the two coincide analytically; keep rounding from crossing.
  if (range.p_min > range.p_max) range.p_max = range.p_min;
  return range;
}

double boundary_bineg(double c, double nu, double p) {
  const BoundaryRange range = boundary_p_range(c, nu);
  if (p < range.p_min - kDomainSlack || p > range.p_max + kDomainSlack) {
    throw OutOfRange("boundary_bineg: p outside [p_min, p_max]");
  }
  return nu * (c + nu) / (4.0 * c) * (2.0 + (c - nu) / (p + nu));
}

}  // namespace bineg
