#pragma once

#include "qlab/skew_form.hpp"
#include "qlab/trig_poly.hpp"

namespace qlab::nctorus {

// Deformed product on torus trigonometric polynomials:
//   (a * b)(m) = sum_{r + r' = m} a_r b_{r'} exp(i*hbar/2 <r, eta r'>).
// Bilinear, associative (the phase is an exact cocycle), and supported inside
// support(a) + support(b). At hbar = 0 it degenerates to the pointwise
// product. `star` computes output modes in parallel with a fixed per-mode
// summation order, so results do not depend on the thread count;
// `star_serial` is the naive reference.
TrigPoly star(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar);
TrigPoly star_serial(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar);

// a*(r) = conj(a(-r)); the unique involution making every character unitary.
TrigPoly involution(const TrigPoly& a);

// Poisson bracket of the constant structure eta on mode functions:
//   {g_r, g_s} = sigma_P <r, eta s> g_{r+s},
// extended bilinearly. sigma_P is the repository bracket orientation
// (see orientation()).
TrigPoly poisson_bracket_const(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta);

// max over modes of |(1/(i*hbar))(a*b - b*a)(m) - sigma {a,b}(m)| with sigma
// the repository commutator orientation. Throws InvalidArgument at hbar = 0.
double semiclassical_error(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar);

// sum_{r,s} |a_r| |b_s| |<r, eta s>|^3 hbar^2 / 24, an upper bound for
// semiclassical_error at every hbar.
double semiclassical_bound(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar);

// Orientation constants fixed empirically, once, by the canonical pair
// r=(1,0), s=(0,1) with the standard 2-d form: bracket_sign matches
// poisson_bracket_const to the finite-difference bracket of the characters,
// and commutator_sign makes the hbar->0 limit of the star commutator land on
// sigma {a,b}. Both signs agree and are shared with the operator module.
struct Orientation {
  int commutator_sign;  // sigma
  int bracket_sign;     // sigma_P
};

const Orientation& orientation();

}  // namespace qlab::nctorus
