#pragma once

#include <functional>

#include "qlab/numkit/grid.hpp"

namespace qlab::numkit {

// Classical fixed-step RK4 for a scalar ODE y' = rhs(t, y).
// The interval [t0, t1] is divided into round((t1-t0)/step) uniform steps, so
// the trajectory always lands exactly on t1. Throws IntegrationDiverged
// (carrying the last good time) if the right-hand side turns non-finite.
Trajectory rk4_solve(const std::function<double(double, double)>& rhs, double t0, double y0,
                     double t1, double step);

}  // namespace qlab::numkit
