#pragma once

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab::poismap {

// Geometry of the unit round sphere in R^3: exponential map of the
// Levi-Civita connection, its base and fiber differentials, parallel
// transport along great circles, and the Jacobi-field form of the full
// differential. All closed forms switch to series below ||u|| = 1e-4 to avoid
// cancellation; the switch is continuous to 1e-14.

struct SpherePoint {
  Vec3 p;

  explicit SpherePoint(const Vec3& v);
};

struct SphereTangent {
  SpherePoint base;
  Vec3 u;

  SphereTangent(const SpherePoint& p, const Vec3& v);
};

// sin(r)/r with its analytic value 1 at r = 0
double sinc(double r);
// (r cos r - sin r) / r^2, the derivative factor of sinc
double sinc_slope(double r);

// Exp_p(u) = cos(||u||) p + sinc(||u||) u
SpherePoint exp_sphere(const SphereTangent& v);

// fiber differential: d/dt Exp_p(u + t h) at t = 0; requires ||u|| < pi
Vec3 d1_exp(const SphereTangent& v, const Vec3& h);

// base differential through parallel transport along the geodesic leaving in
// direction eps: d/dt Exp_{sigma(t)}(transport(u)) at t = 0; ||u|| < pi
Vec3 d2_exp(const SphereTangent& v, const Vec3& eps);

// Transport of w along sigma(t) = cos(t) p + sin(t) eps (eps unit, tangent,
// w tangent at p):
//   <w,eps>(-sin(t) p + cos(t) eps) + <w, p x eps> p x eps.
Vec3 parallel_transport_sphere(const SpherePoint& p, const Vec3& eps, double t, const Vec3& w);

// Differential of Exp at v applied to (horizontal, vertical): the value at
// the endpoint of the Jacobi field along s -> Exp_p(s u) with J(0) = horiz
// and J'(0) = vert, solved in a parallel frame (curvature one). ||u|| < pi.
Vec3 jacobi_dexp(const SphereTangent& v, const Vec3& horiz, const Vec3& vert);

// The same differentials straight from their defining geodesic variations by
// fourth-order differences. Independent of the closed forms above; kept as
// the cross-check route.
Vec3 d1_exp_fd(const SphereTangent& v, const Vec3& h, double step);
Vec3 d2_exp_fd(const SphereTangent& v, const Vec3& eps, double step);
Vec3 jacobi_dexp_fd(const SphereTangent& v, const Vec3& horiz, const Vec3& vert, double step);

}  // namespace qlab::poismap
