#pragma once

#include "qlab/liepoisson/bracket.hpp"
#include "qlab/liepoisson/fiber_poly.hpp"
#include "qlab/trig_poly.hpp"

namespace qlab::weylrn {

// Observable on phase space over a periodic box: f(p, X) = sum_alpha
// a_alpha(p) X^alpha with each base coefficient a finite trigonometric
// polynomial. The box stands in for the non-compact base; the coordinate
// function p_k itself is not periodic, so position-like observables enter as
// characters e^{i p_k} and the identities they generate.
struct SymbolRn {
  int n = 1;
  liepoisson::FiberPoly<TrigPoly> poly;

  explicit SymbolRn(int dim = 1) : n(dim), poly(dim) {
    if (dim < 1) throw InvalidArgument("SymbolRn: dimension must be >= 1");
  }

  void add_term(std::vector<int> alpha, TrigPoly coeff) {
    if (coeff.dim() != n) throw DimensionMismatch("SymbolRn: coefficient dimension != n");
    fp_add_term(poly, std::move(alpha), std::move(coeff),
                liepoisson::TrigCoeffRing{n, 1.0});
  }

  // X_k
  static SymbolRn fiber_coordinate(int n, int k);
  // a(p), no fiber dependence
  static SymbolRn base_coefficient(TrigPoly a);
  static SymbolRn constant(int n, cplx c);

  bool is_zero() const { return poly.terms.empty(); }
  int max_fiber_degree() const;
};

SymbolRn symbol_add(const SymbolRn& f, const SymbolRn& g);
SymbolRn symbol_scale(const SymbolRn& f, cplx s);
SymbolRn symbol_mul(const SymbolRn& f, const SymbolRn& g);

// Lie-Poisson bracket of two symbols in the tangent-bundle chart over the
// box (vanishing structure tensor, identity anchor):
//   {f,g} = sum_k (df/dX_k dg/dp_k - df/dp_k dg/dX_k),
// with d/dp_k carrying the box wavenumber 2*pi/L.
SymbolRn symbol_bracket(const SymbolRn& f, const SymbolRn& g, double period);

}  // namespace qlab::weylrn
