#pragma once

#include <utility>

#include "qlab/skew_form.hpp"
#include "qlab/vec.hpp"

namespace qlab::nctorus {

// Point of the scaled family of translation groupoids over the n-torus:
// parameter hbar, fiber vector u in R^n, base point q stored in [0, 2*pi)^n.
struct GroupoidPoint {
  double hbar = 0.0;
  VecD u;
  VecD q;
};

GroupoidPoint make_groupoid_point(double hbar, VecD u, VecD q);
GroupoidPoint groupoid_unit(double hbar, VecD q);

// s(hbar, u, q) = (hbar, q)
std::pair<double, VecD> groupoid_source(const GroupoidPoint& x);
// t(hbar, u, q) = (hbar, q + hbar*u mod 2*pi)
std::pair<double, VecD> groupoid_target(const GroupoidPoint& x);

// x*y, defined when source(x) = target(y) componentwise to 1e-12 (mod 2*pi);
// the result is (hbar, u_x + u_y, q_y). Throws ComposabilityError with the
// largest mismatch otherwise.
GroupoidPoint groupoid_product(const GroupoidPoint& x, const GroupoidPoint& y);

// Target map of the unscaled integrating groupoid: p + pr_2(u), where pr_2 is
// the orthogonal projection onto the image of eta.
VecD unscaled_target(const VecD& u, const VecD& p, const SkewForm& eta);

}  // namespace qlab::nctorus
