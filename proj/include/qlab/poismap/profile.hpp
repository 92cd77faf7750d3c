#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlab/numkit/grid.hpp"

namespace qlab::poismap {

// Radial reparameterisation mu of the exponential map used by the sphere
// Poisson map: the rescaled vector is mu(||u||) u. Defined on (0, 2) with
// analytic limit 1/2 at the origin. The only profile that yields a Poisson
// map is arcsin(t/2)/t, the solution of t*alpha' + alpha = t through the
// origin-regular branch.
struct RadialProfile {
  std::function<double(double)> mu;
  bool closed_form = false;

  static RadialProfile arcsin_profile();
  // mu = 1/2 everywhere: the naive half-exponential, kept as a negative
  // control
  static RadialProfile half_profile();
  // piecewise-linear interpolation of tabulated (t, mu) pairs; accurate only
  // to the table resolution, see the CLI docs
  static RadialProfile from_table(std::vector<double> t, std::vector<double> mu);
  // table file: two numbers per line, "t mu"
  static RadialProfile from_file(const std::string& path);
};

// value of arcsin(t/2)/t with the series branch near zero
double arcsin_profile_value(double t);

// RK4 trajectory of alpha' = (t - alpha)/t on [t0, t1]; t0 = 0 is rejected
// because the coefficient is singular there.
numkit::Trajectory solve_profile_ode(double a, double t0, double alpha0, double t1, double step);

// largest |alpha(t) - (a/t + t/2)| along a trajectory
double compare_closed_form(const numkit::Trajectory& traj, double a);

// profile reconstructed from an ODE trajectory: mu(t) = arcsin(alpha(t))/t
RadialProfile profile_from_trajectory(const numkit::Trajectory& traj);

}  // namespace qlab::poismap
