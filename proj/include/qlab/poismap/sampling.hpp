#pragma once

#include "qlab/poismap/sphere.hpp"
#include "qlab/rng.hpp"
#include "qlab/vec.hpp"

namespace qlab::poismap {

inline Vec3 random_sphere_point(Rng& rng) {
  Vec3 v{rng.normal(), rng.normal(), rng.normal()};
  while (norm(v) < 1e-6) v = Vec3{rng.normal(), rng.normal(), rng.normal()};
  return normalized(v);
}

// tangent at p with a uniformly drawn length in [0, max_norm]
inline Vec3 random_tangent(Rng& rng, const Vec3& p, double max_norm) {
  Vec3 v{rng.normal(), rng.normal(), rng.normal()};
  Vec3 t = v - dot(v, p) * p;
  while (norm(t) < 1e-6) {
    v = Vec3{rng.normal(), rng.normal(), rng.normal()};
    t = v - dot(v, p) * p;
  }
  return (max_norm * rng.uniform() / norm(t)) * t;
}

inline Vec3 random_unit_tangent(Rng& rng, const Vec3& p) {
  Vec3 t = random_tangent(rng, p, 1.0);
  return normalized(t);
}

inline VecD random_torus_point(Rng& rng, int n) {
  VecD q(static_cast<std::size_t>(n));
  for (double& x : q) x = rng.uniform(0.0, kTwoPi);
  return q;
}

inline VecD random_torus_vector(Rng& rng, int n, double max_norm) {
  VecD u(static_cast<std::size_t>(n));
  for (double& x : u) x = rng.normal();
  const double r = vnorm(u);
  if (r < 1e-12) return VecD(static_cast<std::size_t>(n), 0.0);
  return vscale(max_norm * rng.uniform() / r, u);
}

}  // namespace qlab::poismap
