#pragma once

#include <vector>

#include "qlab/liepoisson/classify.hpp"
#include "qlab/numkit/dft.hpp"
#include "qlab/numkit/grid.hpp"
#include "qlab/weylrn/symbol.hpp"

namespace qlab::weylrn {

// Quantisation of a polynomial symbol at a given hbar on a periodic grid:
//   f = sum_alpha a_alpha(p) X^alpha  ->  sum_alpha a_alpha(p) (-i hbar d/dp)^alpha,
// coefficients multiplying on the left, derivatives acting first, exactly in
// the order the defining integral produces. Derivatives act spectrally, so
// the operator is exact on band-limited samples; coefficients multiply
// nodally. At hbar = 0 only the alpha = 0 coefficient survives and the
// operator is multiplication by f(p, 0).
class QuantisedOperator {
 public:
  QuantisedOperator(const SymbolRn& f, double hbar, const numkit::PeriodicGrid& grid);

  double hbar() const { return hbar_; }
  const numkit::PeriodicGrid& grid() const { return grid_; }
  std::size_t term_count() const { return terms_.size(); }

  std::vector<cplx> apply(const std::vector<cplx>& H) const;
  std::vector<cplx> apply_serial(const std::vector<cplx>& H) const;

 private:
  std::vector<cplx> apply_impl(const std::vector<cplx>& H, bool parallel) const;

  struct Term {
    std::vector<int> alpha;
    std::vector<cplx> coeff_nodal;  // a_alpha evaluated on the grid
  };

  double hbar_;
  numkit::PeriodicGrid grid_;
  std::vector<Term> terms_;
};

QuantisedOperator quantise(const SymbolRn& f, double hbar, const numkit::PeriodicGrid& grid);

// Entry point for tagged functions: only the fiber-polynomial family with
// constant coefficients lands in the operator calculus here; everything else
// raises UnsupportedSymbol.
QuantisedOperator quantise(const liepoisson::QuantisableFunction& f, double hbar,
                           const numkit::PeriodicGrid& grid);

// Sup-norm deviation between sigma/(i hbar) [Q(f), Q(g)] H and Q({f,g}) H,
// where sigma is the repository commutator orientation and {f,g} is the
// tangent-chart Lie-Poisson bracket of the symbols.
double commutator_check(const SymbolRn& f, const SymbolRn& g, double hbar,
                        const std::vector<cplx>& H, const numkit::PeriodicGrid& grid);

}  // namespace qlab::weylrn
