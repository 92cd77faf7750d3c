#pragma once

#include <memory>
#include <vector>

#include "qlab/poismap/profile.hpp"
#include "qlab/poismap/sphere.hpp"
#include "qlab/skew_form.hpp"
#include "qlab/vec.hpp"

namespace qlab::poismap {

// Points and tangent vectors are carried in ambient coordinates: angles for
// the flat torus, unit 3-vectors for the round sphere.
using Point = VecD;
using Tangent = VecD;

// A bivector as a sum of weighted wedge pairs of ambient tangent vectors.
struct WedgePair {
  double weight = 0.0;
  Tangent s1, s2;
};
using Bivector = std::vector<WedgePair>;

// <B, a ^ b> for covectors given by their ambient components
double pair_bivector(const Bivector& B, const VecD& a, const VecD& b);

// A Poisson manifold with a connection: enough structure to move test
// functions around (geodesics, parallel transport) and to evaluate the
// bivector. Implementations are immutable and safe to share.
class PoissonGeometry {
 public:
  virtual ~PoissonGeometry() = default;

  virtual int ambient_dim() const = 0;
  virtual int tangent_rank() const = 0;

  // orthonormal basis of the tangent space at x
  virtual std::vector<Tangent> tangent_basis(const Point& x) const = 0;

  // Exp_x(t w) for an arbitrary tangent w
  virtual Point geodesic(const Point& x, const Tangent& w, double t) const = 0;

  // parallel transport of v along s -> Exp_x(s w) from s = 0 to s = t
  virtual Tangent transport(const Point& x, const Tangent& w, double t, const Tangent& v) const = 0;

  virtual Bivector eta(const Point& x) const = 0;
};

// Torus R^n / 2*pi Z^n with the trivial connection and a constant bivector.
class FlatTorus : public PoissonGeometry {
 public:
  explicit FlatTorus(SkewForm eta);

  int ambient_dim() const override { return eta_.dim(); }
  int tangent_rank() const override { return eta_.dim(); }
  std::vector<Tangent> tangent_basis(const Point& x) const override;
  Point geodesic(const Point& x, const Tangent& w, double t) const override;
  Tangent transport(const Point& x, const Tangent& w, double t, const Tangent& v) const override;
  Bivector eta(const Point& x) const override;

  const SkewForm& form() const { return eta_; }

 private:
  SkewForm eta_;
};

// Unit sphere with the round metric, its Levi-Civita connection, and the
// inverse of the area symplectic form omega = g(J., .) with J_p(u) = u x p.
// The induced bivector is eta(p) = u ^ (p x u) / ||u||^2 for any nonzero
// tangent u, which is basis independent.
class RoundSphere : public PoissonGeometry {
 public:
  int ambient_dim() const override { return 3; }
  int tangent_rank() const override { return 2; }
  std::vector<Tangent> tangent_basis(const Point& x) const override;
  Point geodesic(const Point& x, const Tangent& w, double t) const override;
  Tangent transport(const Point& x, const Tangent& w, double t, const Tangent& v) const override;
  Bivector eta(const Point& x) const override;
};

Vec3 to_vec3(const VecD& v);
VecD from_vec3(const Vec3& v);

// The candidate Poisson maps TP -> P.

// p + u/2 reduced mod 2*pi
Point pi_torus(const Point& p, const Tangent& u);

// Exp_p(mu(||u||) u); requires ||u|| < 2 (arcsin domain for the closed-form
// profile; the hard limit applies to every profile)
SpherePoint pi_sphere(const SphereTangent& v, const RadialProfile& profile);

}  // namespace qlab::poismap
