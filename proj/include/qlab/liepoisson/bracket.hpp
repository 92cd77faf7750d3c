#pragma once

#include <functional>
#include <variant>

#include "qlab/liepoisson/chart.hpp"
#include "qlab/liepoisson/fiber_poly.hpp"
#include "qlab/numkit/grid.hpp"

namespace qlab::liepoisson {

// An observable on the dual bundle in local coordinates (u, Z): either an
// opaque callable or a fiber polynomial. Fiber polynomials whose coefficients
// are constants or polynomials in u take the exact-derivative path; anything
// else is differentiated with fourth-order central differences.
class DualFunction {
 public:
  using Callable = std::function<double(const VecD&, const VecD&)>;

  DualFunction(Callable f) : rep_(std::move(f)) {}
  DualFunction(FiberPolynomial p) : rep_(std::move(p)) {}

  bool exact() const {
    const auto* p = std::get_if<FiberPolynomial>(&rep_);
    return p != nullptr && p->symbolic();
  }

  const FiberPolynomial& poly() const { return std::get<FiberPolynomial>(rep_); }

  double eval(const VecD& u, const VecD& Z) const;

 private:
  std::variant<Callable, FiberPolynomial> rep_;
};

// The Lie-Poisson bracket on the dual of the algebroid, evaluated at (u, Z):
//
//   {F,G} = sum_{k,h,j} dF/dZ_k dG/dZ_h (B^j_{hk} - B^j_{kh}) Z_j
//         + sum_{k,h} (dF/dZ_k dG/du_h - dF/du_h dG/dZ_k) rho_{hk},
//
// with k, j running over fiber indices and h over base indices in the second
// sum. This is the one canonical sign convention in the repository; every
// orientation-sensitive check refers back to it.
double lie_poisson_bracket(const DualFunction& F, const DualFunction& G, const VecD& u,
                           const VecD& Z, const AlgebroidChart& chart,
                           const numkit::Tolerances& tol);

// |{F,{G,H}} + {G,{H,F}} + {H,{F,G}}| at (u, Z); the inner bracket is fed to
// the outer one as a callable, so this validates supplied (B, rho) data
// numerically rather than symbolically.
double jacobi_residual(const AlgebroidChart& chart, const FiberPolynomial& F,
                       const FiberPolynomial& G, const FiberPolynomial& H, const VecD& u,
                       const VecD& Z, const numkit::Tolerances& tol);

// Symbolic form of the same bracket for constant charts, over any coefficient
// ring. Used where the bracket itself must be quantised afterwards.
template <class Ring>
FiberPoly<typename Ring::Elem> lie_poisson_bracket_symbolic(
    const FiberPoly<typename Ring::Elem>& F, const FiberPoly<typename Ring::Elem>& G,
    const std::vector<double>& B, const std::vector<double>& rho, int base_dim, int fiber_dim,
    const Ring& ring) {
  const int n = fiber_dim;
  const int m = base_dim;
  FiberPoly<typename Ring::Elem> out(n);

  std::vector<FiberPoly<typename Ring::Elem>> Fz, Gz;
  Fz.reserve(static_cast<std::size_t>(n));
  Gz.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Fz.push_back(fp_dZ(F, k, ring));
    Gz.push_back(fp_dZ(G, k, ring));
  }

  if (!B.empty()) {
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h) {
        if (Fz[static_cast<std::size_t>(k)].terms.empty() ||
            Gz[static_cast<std::size_t>(h)].terms.empty())
          continue;
        auto prod = fp_mul(Fz[static_cast<std::size_t>(k)], Gz[static_cast<std::size_t>(h)], ring);
        for (int j = 0; j < n; ++j) {
          const double c = B[b_index(n, j, h, k)] - B[b_index(n, j, k, h)];
          if (c == 0.0) continue;
          out = fp_add(out, fp_scale(fp_mul_Z(prod, j, ring), c, ring), ring);
        }
      }
  }

  if (!rho.empty()) {
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < m; ++h) {
        const double r = rho[rho_index(n, h, k)];
        if (r == 0.0) continue;
        auto t1 = fp_mul(Fz[static_cast<std::size_t>(k)], fp_du(G, h, ring), ring);
        auto t2 = fp_mul(fp_du(F, h, ring), Gz[static_cast<std::size_t>(k)], ring);
        out = fp_add(out, fp_scale(fp_add(t1, fp_scale(t2, -1.0, ring), ring), r, ring), ring);
      }
  }
  return out;
}

}  // namespace qlab::liepoisson
