#include "qlab/numkit/rk4.hpp"

#include <cmath>

namespace qlab::numkit {

Trajectory rk4_solve(const std::function<double(double, double)>& rhs, double t0, double y0,
                     double t1, double step) {
  if (!(t1 > t0)) throw InvalidArgument("rk4_solve: t1 must exceed t0");
  if (!(step > 0.0)) throw InvalidArgument("rk4_solve: step must be positive");

  const auto n = static_cast<std::size_t>(std::max<long long>(1, std::llround((t1 - t0) / step)));
  const double h = (t1 - t0) / static_cast<double>(n);

  VecD times, values;
  times.reserve(n + 1);
  values.reserve(n + 1);
  times.push_back(t0);
  values.push_back(y0);

  double t = t0;
  double y = y0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k1 = rhs(t, y);
    const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = rhs(t + h, y + h * k3);
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(k4))
      throw IntegrationDiverged("rk4_solve: non-finite right-hand side", t);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y)) throw IntegrationDiverged("rk4_solve: state diverged", t);
    t = t0 + (t1 - t0) * static_cast<double>(i + 1) / static_cast<double>(n);
    times.push_back(t);
    values.push_back(y);
  }
  return Trajectory(std::move(times), std::move(values));
}

}  // namespace qlab::numkit
