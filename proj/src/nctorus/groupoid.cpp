#include "qlab/nctorus/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlab/errors.hpp"

namespace qlab::nctorus {

namespace {
constexpr double kComposeTol = 1e-12;
}

GroupoidPoint make_groupoid_point(double hbar, VecD u, VecD q) {
  if (u.size() != q.size())
    throw DimensionMismatch("GroupoidPoint: fiber and base dimensions differ");
  if (!std::isfinite(hbar) || !is_finite(u) || !is_finite(q))
    throw InvalidArgument("GroupoidPoint: non-finite data");
  return GroupoidPoint{hbar, std::move(u), wrap_torus(std::move(q))};
}

GroupoidPoint groupoid_unit(double hbar, VecD q) {
  VecD zero(q.size(), 0.0);
  return make_groupoid_point(hbar, std::move(zero), std::move(q));
}

std::pair<double, VecD> groupoid_source(const GroupoidPoint& x) { return {x.hbar, x.q}; }

std::pair<double, VecD> groupoid_target(const GroupoidPoint& x) {
  VecD t(x.q.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = wrap_angle(x.q[i] + x.hbar * x.u[i]);
  return {x.hbar, t};
}

GroupoidPoint groupoid_product(const GroupoidPoint& x, const GroupoidPoint& y) {
  if (x.u.size() != y.u.size()) throw DimensionMismatch("groupoid_product: dimension mismatch");
  const auto [hs, qs] = groupoid_source(x);
  const auto [ht, qt] = groupoid_target(y);
  double mismatch = std::fabs(hs - ht);
  for (std::size_t i = 0; i < qs.size(); ++i)
    mismatch = std::max(mismatch, circle_distance(qs[i], qt[i]));
  if (mismatch > kComposeTol)
    throw ComposabilityError(
        "groupoid_product: source(x) != target(y), mismatch " + std::to_string(mismatch),
        mismatch);
  return make_groupoid_point(x.hbar, vadd(x.u, y.u), y.q);
}

VecD unscaled_target(const VecD& u, const VecD& p, const SkewForm& eta) {
  if (u.size() != p.size() || static_cast<int>(u.size()) != eta.dim())
    throw DimensionMismatch("unscaled_target: dimension mismatch");
  return wrap_torus(vadd(p, eta.project_image(u)));
}

}  // namespace qlab::nctorus
