#include "qlab/poismap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "qlab/errors.hpp"
#include "qlab/numkit/rk4.hpp"

namespace qlab::poismap {

double arcsin_profile_value(double t) {
  if (!(t >= 0.0 && t < 2.0)) throw OutOfDomain("arcsin profile: t must lie in [0, 2)");
  if (t < 1e-4) {
    // arcsin(t/2)/t = 1/2 + t^2/48 + 3 t^4/1280 + ...
    const double t2 = t * t;
    return 0.5 + t2 / 48.0 + 3.0 * t2 * t2 / 1280.0;
  }
  return std::asin(0.5 * t) / t;
}

RadialProfile RadialProfile::arcsin_profile() {
  return RadialProfile{[](double t) { return arcsin_profile_value(t); }, true};
}

RadialProfile RadialProfile::half_profile() {
  return RadialProfile{[](double) { return 0.5; }, true};
}

RadialProfile RadialProfile::from_table(std::vector<double> t, std::vector<double> mu) {
  if (t.size() != mu.size() || t.size() < 2)
    throw InvalidArgument("RadialProfile::from_table: need matching columns with >= 2 rows");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw InvalidArgument("RadialProfile::from_table: abscissae must increase");
  auto eval = [t = std::move(t), mu = std::move(mu)](double x) {
    if (x <= t.front()) return mu.front();
    if (x >= t.back()) return mu.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * mu[i - 1] + w * mu[i];
  };
  return RadialProfile{std::move(eval), false};
}

RadialProfile RadialProfile::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("RadialProfile::from_file: cannot open " + path);
  std::vector<double> t, mu;
  std::string line;
  int lineno = 0;
  // strtod handles nan/inf tokens; finiteness is enforced where the profile
  // is evaluated, not here
  auto parse = [&](const char* s, char** end) { return std::strtod(s, end); };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const char* cur = line.c_str();
    char* end = nullptr;
    const double a = parse(cur, &end);
    if (end == cur) continue;  // blank line
    cur = end;
    const double b = parse(cur, &end);
    if (end == cur)
      throw InvalidArgument("RadialProfile::from_file: line " + std::to_string(lineno) +
                            ": expected two numbers");
    t.push_back(a);
    mu.push_back(b);
  }
  return from_table(std::move(t), std::move(mu));
}

numkit::Trajectory solve_profile_ode(double a, double t0, double alpha0, double t1, double step) {
  (void)a;  // selects the branch through alpha0; kept for the comparison API
  if (!(t0 > 0.0)) throw InvalidArgument("solve_profile_ode: t0 = 0 is a singular point");
  if (!(t1 > t0 && t1 < 2.0)) throw InvalidArgument("solve_profile_ode: need 0 < t0 < t1 < 2");
  auto rhs = [](double t, double alpha) { return (t - alpha) / t; };
  return numkit::rk4_solve(rhs, t0, alpha0, t1, step);
}

double compare_closed_form(const numkit::Trajectory& traj, double a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    worst = std::max(worst, std::fabs(traj.values[i] - (a / t + 0.5 * t)));
  }
  return worst;
}

RadialProfile profile_from_trajectory(const numkit::Trajectory& traj) {
  std::vector<double> t = traj.times, mu(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (std::fabs(traj.values[i]) > 1.0)
      throw OutOfDomain("profile_from_trajectory: |alpha| > 1 has no arcsin");
    mu[i] = std::asin(traj.values[i]) / traj.times[i];
  }
  return RadialProfile::from_table(std::move(t), std::move(mu));
}

}  // namespace qlab::poismap
