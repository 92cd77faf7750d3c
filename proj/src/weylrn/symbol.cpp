#include "qlab/weylrn/symbol.hpp"

#include <algorithm>

namespace qlab::weylrn {

using liepoisson::TrigCoeffRing;

SymbolRn SymbolRn::fiber_coordinate(int n, int k) {
  if (k < 0 || k >= n) throw InvalidArgument("SymbolRn::fiber_coordinate: bad index");
  SymbolRn f(n);
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  alpha[static_cast<std::size_t>(k)] = 1;
  f.add_term(std::move(alpha), TrigPoly::constant(n, cplx(1.0, 0.0)));
  return f;
}

SymbolRn SymbolRn::base_coefficient(TrigPoly a) {
  const int n = a.dim();
  SymbolRn f(n);
  f.add_term(std::vector<int>(static_cast<std::size_t>(n), 0), std::move(a));
  return f;
}

SymbolRn SymbolRn::constant(int n, cplx c) {
  return base_coefficient(TrigPoly::constant(n, c));
}

int SymbolRn::max_fiber_degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : poly.terms) {
    int d = 0;
    for (int e : alpha) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

SymbolRn symbol_add(const SymbolRn& f, const SymbolRn& g) {
  if (f.n != g.n) throw DimensionMismatch("symbol_add: dimension mismatch");
  SymbolRn r(f.n);
  r.poly = liepoisson::fp_add(f.poly, g.poly, TrigCoeffRing{f.n, 1.0});
  return r;
}

SymbolRn symbol_scale(const SymbolRn& f, cplx s) {
  SymbolRn r(f.n);
  for (const auto& [alpha, c] : f.poly.terms)
    liepoisson::fp_add_term(r.poly, alpha, c * s, TrigCoeffRing{f.n, 1.0});
  return r;
}

SymbolRn symbol_mul(const SymbolRn& f, const SymbolRn& g) {
  if (f.n != g.n) throw DimensionMismatch("symbol_mul: dimension mismatch");
  SymbolRn r(f.n);
  r.poly = liepoisson::fp_mul(f.poly, g.poly, TrigCoeffRing{f.n, 1.0});
  return r;
}

SymbolRn symbol_bracket(const SymbolRn& f, const SymbolRn& g, double period) {
  if (f.n != g.n) throw DimensionMismatch("symbol_bracket: dimension mismatch");
  const int n = f.n;
  const TrigCoeffRing ring{n, kTwoPi / period};
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> rho(nn * nn, 0.0);
  for (int k = 0; k < n; ++k) rho[liepoisson::rho_index(n, k, k)] = 1.0;
  SymbolRn r(n);
  r.poly = liepoisson::lie_poisson_bracket_symbolic(f.poly, g.poly, {}, rho, n, n, ring);
  return r;
}

}  // namespace qlab::weylrn
