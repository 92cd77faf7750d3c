#include "qlab/poismap/sphere.hpp"

#include <cmath>
#include <string>

#include "qlab/numkit/finite_diff.hpp"

namespace qlab::poismap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesCut = 1e-4;
constexpr double kUnitTol = 1e-12;
constexpr double kTangentTol = 1e-10;

}  // namespace

SpherePoint::SpherePoint(const Vec3& v) : p(v) {
  if (!is_finite(v)) throw InvalidArgument("SpherePoint: non-finite coordinates");
  if (std::fabs(norm(v) - 1.0) > kUnitTol)
    throw InvalidArgument("SpherePoint: not on the unit sphere, |p| = " +
                          std::to_string(norm(v)));
}

SphereTangent::SphereTangent(const SpherePoint& pt, const Vec3& v) : base(pt), u(v) {
  if (!is_finite(v)) throw InvalidArgument("SphereTangent: non-finite vector");
  if (std::fabs(dot(pt.p, v)) > kTangentTol)
    throw InvalidArgument("SphereTangent: vector not tangent, <p,u> = " +
                          std::to_string(dot(pt.p, v)));
}

double sinc(double r) {
  if (std::fabs(r) < kSeriesCut) {
    const double r2 = r * r;
    return 1.0 - r2 / 6.0 + r2 * r2 / 120.0;
  }
  return std::sin(r) / r;
}

double sinc_slope(double r) {
  if (std::fabs(r) < kSeriesCut) {
    const double r2 = r * r;
    return -r / 3.0 + r * r2 / 30.0;
  }
  return (r * std::cos(r) - std::sin(r)) / (r * r);
}

SpherePoint exp_sphere(const SphereTangent& v) {
  const double r = norm(v.u);
  return SpherePoint(std::cos(r) * v.base.p + sinc(r) * v.u);
}

Vec3 d1_exp(const SphereTangent& v, const Vec3& h) {
  const double r = norm(v.u);
  if (r >= kPi)
    throw OutOfChart("d1_exp: ||u|| >= pi, conjugate-point territory");
  if (r == 0.0) return h;
  const double uh = dot(v.u, h);
  return sinc(r) * ((-uh) * v.base.p + h) + (sinc_slope(r) * uh / r) * v.u;
}

Vec3 d2_exp(const SphereTangent& v, const Vec3& eps) {
  const double r = norm(v.u);
  if (r >= kPi)
    throw OutOfChart("d2_exp: ||u|| >= pi, conjugate-point territory");
  return std::cos(r) * eps - (sinc(r) * dot(v.u, eps)) * v.base.p;
}

Vec3 parallel_transport_sphere(const SpherePoint& p, const Vec3& eps, double t, const Vec3& w) {
  if (std::fabs(norm(eps) - 1.0) > kTangentTol)
    throw InvalidArgument("parallel_transport_sphere: eps must be a unit vector");
  if (std::fabs(dot(p.p, eps)) > kTangentTol)
    throw InvalidArgument("parallel_transport_sphere: eps must be tangent at p");
  if (std::fabs(dot(p.p, w)) > kTangentTol)
    throw InvalidArgument("parallel_transport_sphere: w must be tangent at p");
  const Vec3 n = cross(p.p, eps);
  return dot(w, eps) * (-std::sin(t) * p.p + std::cos(t) * eps) + dot(w, n) * n;
}

Vec3 jacobi_dexp(const SphereTangent& v, const Vec3& horiz, const Vec3& vert) {
  const double r = norm(v.u);
  if (r >= kPi)
    throw OutOfChart("jacobi_dexp: ||u|| >= pi, conjugate-point territory");
  if (r == 0.0) return horiz + vert;

  const Vec3 e1 = (1.0 / r) * v.u;
  const Vec3 e2 = cross(v.base.p, e1);

  // components of J(0) and J'(0) in the frame moving with the geodesic
  const double x0 = dot(horiz, e1), y0 = dot(horiz, e2);
  const double x1 = dot(vert, e1), y1 = dot(vert, e2);

  // tangential part is affine, the normal part oscillates at the speed r
  const double x1_end = x0 + x1;
  const double y1_end = y0 * std::cos(r) + y1 * sinc(r);

  const Vec3 E1 = parallel_transport_sphere(v.base, e1, r, e1);
  return x1_end * E1 + y1_end * e2;
}

namespace {

// transport of w along the geodesic leaving p with velocity dir (any length)
// to parameter t
Vec3 transport_along(const SpherePoint& p, const Vec3& dir, double t, const Vec3& w) {
  const double speed = norm(dir);
  if (speed == 0.0) return w;
  return parallel_transport_sphere(p, (1.0 / speed) * dir, t * speed, w);
}

}  // namespace

Vec3 d1_exp_fd(const SphereTangent& v, const Vec3& h, double step) {
  return numkit::central_diff1(
      [&](double t) { return exp_sphere(SphereTangent(v.base, v.u + t * h)).p; }, 0.0, step);
}

Vec3 d2_exp_fd(const SphereTangent& v, const Vec3& eps, double step) {
  return numkit::central_diff1(
      [&](double t) {
        const SpherePoint st = exp_sphere(SphereTangent(v.base, t * eps));
        return exp_sphere(SphereTangent(st, transport_along(v.base, eps, t, v.u))).p;
      },
      0.0, step);
}

Vec3 jacobi_dexp_fd(const SphereTangent& v, const Vec3& horiz, const Vec3& vert, double step) {
  return numkit::central_diff1(
      [&](double t) {
        const SpherePoint st = exp_sphere(SphereTangent(v.base, t * horiz));
        const Vec3 moved = transport_along(v.base, horiz, t, v.u + t * vert);
        return exp_sphere(SphereTangent(st, moved)).p;
      },
      0.0, step);
}

}  // namespace qlab::poismap
