#include "qlab/poismap/geometry.hpp"

#include <cmath>

namespace qlab::poismap {

double pair_bivector(const Bivector& B, const VecD& a, const VecD& b) {
  double s = 0.0;
  for (const auto& w : B)
    s += w.weight * (vdot(a, w.s1) * vdot(b, w.s2) - vdot(a, w.s2) * vdot(b, w.s1));
  return s;
}

Vec3 to_vec3(const VecD& v) {
  if (v.size() != 3) throw DimensionMismatch("to_vec3: expected three components");
  return Vec3{v[0], v[1], v[2]};
}

VecD from_vec3(const Vec3& v) { return VecD{v.x, v.y, v.z}; }

FlatTorus::FlatTorus(SkewForm eta) : eta_(std::move(eta)) {}

std::vector<Tangent> FlatTorus::tangent_basis(const Point&) const {
  const int n = eta_.dim();
  std::vector<Tangent> basis(static_cast<std::size_t>(n), Tangent(static_cast<std::size_t>(n), 0.0));
  for (int k = 0; k < n; ++k) basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1.0;
  return basis;
}

Point FlatTorus::geodesic(const Point& x, const Tangent& w, double t) const {
  return wrap_torus(vadd(x, vscale(t, w)));
}

Tangent FlatTorus::transport(const Point&, const Tangent&, double, const Tangent& v) const {
  return v;
}

Bivector FlatTorus::eta(const Point&) const {
  const int n = eta_.dim();
  Bivector B;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const double c = eta_.entry(k, l);
      if (c == 0.0) continue;
      Tangent ek(static_cast<std::size_t>(n), 0.0), el(static_cast<std::size_t>(n), 0.0);
      ek[static_cast<std::size_t>(k)] = 1.0;
      el[static_cast<std::size_t>(l)] = 1.0;
      B.push_back({c, std::move(ek), std::move(el)});
    }
  return B;
}

std::vector<Tangent> RoundSphere::tangent_basis(const Point& x) const {
  const Vec3 p = to_vec3(x);
  // seed axis least aligned with p, then Gram-Schmidt
  Vec3 seed{1.0, 0.0, 0.0};
  if (std::fabs(p.y) < std::fabs(p.x)) seed = Vec3{0.0, 1.0, 0.0};
  if (std::fabs(p.z) < std::fabs(p.x) && std::fabs(p.z) < std::fabs(p.y))
    seed = Vec3{0.0, 0.0, 1.0};
  const Vec3 b1 = normalized(seed - dot(seed, p) * p);
  const Vec3 b2 = cross(p, b1);
  return {from_vec3(b1), from_vec3(b2)};
}

Point RoundSphere::geodesic(const Point& x, const Tangent& w, double t) const {
  const SpherePoint p(to_vec3(x));
  return from_vec3(exp_sphere(SphereTangent(p, t * to_vec3(w))).p);
}

Tangent RoundSphere::transport(const Point& x, const Tangent& w, double t,
                               const Tangent& v) const {
  const Vec3 wv = to_vec3(w);
  const double speed = norm(wv);
  if (speed == 0.0) return v;
  const SpherePoint p(to_vec3(x));
  return from_vec3(parallel_transport_sphere(p, (1.0 / speed) * wv, t * speed, to_vec3(v)));
}

Bivector RoundSphere::eta(const Point& x) const {
  const auto basis = tangent_basis(x);
  // b2 = p x b1, so this is u ^ (p x u)/||u||^2 in any tangent u
  return {WedgePair{1.0, basis[0], basis[1]}};
}

Point pi_torus(const Point& p, const Tangent& u) {
  if (p.size() != u.size()) throw DimensionMismatch("pi_torus: dimension mismatch");
  return wrap_torus(vadd(p, vscale(0.5, u)));
}

SpherePoint pi_sphere(const SphereTangent& v, const RadialProfile& profile) {
  const double r = norm(v.u);
  if (r >= 2.0)
    throw OutOfDomain("pi_sphere: only defined for ||u|| < 2");
  if (r == 0.0) return v.base;
  const double mu = profile.mu(r);
  if (!std::isfinite(mu)) throw EvaluationError("pi_sphere: profile returned non-finite value");
  return exp_sphere(SphereTangent(v.base, mu * v.u));
}

}  // namespace qlab::poismap
