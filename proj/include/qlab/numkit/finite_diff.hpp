#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab::numkit {

// Fourth-order central differences: the 5-point stencil
//   f'(t) ~ (f(t-2h) - 8 f(t-h) + 8 f(t+h) - f(t+2h)) / (12 h).
// Works for any codomain with +,-, scalar* (double, cplx, Vec3).
template <class F>
auto central_diff1(F&& f, double t, double h) {
  auto fm2 = f(t - 2.0 * h);
  auto fm1 = f(t - h);
  auto fp1 = f(t + h);
  auto fp2 = f(t + 2.0 * h);
  if (!is_finite(fm2) || !is_finite(fm1) || !is_finite(fp1) || !is_finite(fp2))
    throw EvaluationError("central_diff: non-finite sample on the stencil");
  return (1.0 / (12.0 * h)) * (fm2 - fp2 + 8.0 * (fp1 - fm1));
}

// Directional derivative of a scalar field along a unit direction.
inline double central_diff(const std::function<double(const VecD&)>& f, const VecD& x,
                           const VecD& direction, double step) {
  auto g = [&](double t) {
    VecD y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * direction[i];
    return f(y);
  };
  return central_diff1(g, 0.0, step);
}

// Least-squares slope of log(y) against log(x); x, y > 0.
inline double fit_loglog_slope(const VecD& xs, const VecD& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InvalidArgument("fit_loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw InvalidArgument("fit_loglog_slope: values must be positive");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qlab::numkit
