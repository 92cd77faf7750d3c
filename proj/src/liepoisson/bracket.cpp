#include "qlab/liepoisson/bracket.hpp"

#include <cmath>

#include "qlab/numkit/finite_diff.hpp"

namespace qlab::liepoisson {

namespace {

struct Partials {
  VecD dZ;  // fiber partials, length n
  VecD du;  // base partials, length m
};

Partials partials_of(const DualFunction& f, const VecD& u, const VecD& Z,
                     const numkit::Tolerances& tol) {
  const int m = static_cast<int>(u.size());
  const int n = static_cast<int>(Z.size());
  Partials p;
  p.dZ.assign(static_cast<std::size_t>(n), 0.0);
  p.du.assign(static_cast<std::size_t>(m), 0.0);

  if (f.exact()) {
    const UPolyRing ring{m};
    const auto sym = f.poly().to_symbolic();
    for (int k = 0; k < n; ++k)
      p.dZ[static_cast<std::size_t>(k)] = fp_eval(fp_dZ(sym, k, ring), u, Z, ring);
    for (int h = 0; h < m; ++h)
      p.du[static_cast<std::size_t>(h)] = fp_eval(fp_du(sym, h, ring), u, Z, ring);
    return p;
  }

  for (int k = 0; k < n; ++k) {
    auto g = [&](double t) {
      VecD Zt = Z;
      Zt[static_cast<std::size_t>(k)] += t;
      return f.eval(u, Zt);
    };
    p.dZ[static_cast<std::size_t>(k)] = numkit::central_diff1(g, 0.0, tol.fd_step);
  }
  for (int h = 0; h < m; ++h) {
    auto g = [&](double t) {
      VecD ut = u;
      ut[static_cast<std::size_t>(h)] += t;
      return f.eval(ut, Z);
    };
    p.du[static_cast<std::size_t>(h)] = numkit::central_diff1(g, 0.0, tol.fd_step);
  }
  return p;
}

}  // namespace

double DualFunction::eval(const VecD& u, const VecD& Z) const {
  if (const auto* p = std::get_if<FiberPolynomial>(&rep_)) return p->eval(u, Z);
  const double v = std::get<Callable>(rep_)(u, Z);
  if (!std::isfinite(v)) throw EvaluationError("DualFunction: callable returned non-finite value");
  return v;
}

double lie_poisson_bracket(const DualFunction& F, const DualFunction& G, const VecD& u,
                           const VecD& Z, const AlgebroidChart& chart,
                           const numkit::Tolerances& tol) {
  if (static_cast<int>(u.size()) != chart.base_dim ||
      static_cast<int>(Z.size()) != chart.fiber_dim)
    throw DimensionMismatch("lie_poisson_bracket: point does not match the chart");
  const int n = chart.fiber_dim;
  const int m = chart.base_dim;

  const auto pF = partials_of(F, u, Z, tol);
  const auto pG = partials_of(G, u, Z, tol);
  const auto B = chart.B_at(u);
  const auto rho = chart.rho_at(u);

  double structure = 0.0;
  for (int k = 0; k < n; ++k) {
    if (pF.dZ[static_cast<std::size_t>(k)] == 0.0) continue;
    for (int h = 0; h < n; ++h) {
      if (pG.dZ[static_cast<std::size_t>(h)] == 0.0) continue;
      double bz = 0.0;
      for (int j = 0; j < n; ++j)
        bz += (B[b_index(n, j, h, k)] - B[b_index(n, j, k, h)]) * Z[static_cast<std::size_t>(j)];
      structure += pF.dZ[static_cast<std::size_t>(k)] * pG.dZ[static_cast<std::size_t>(h)] * bz;
    }
  }

  double anchor = 0.0;
  for (int k = 0; k < n; ++k)
    for (int h = 0; h < m; ++h)
      anchor += (pF.dZ[static_cast<std::size_t>(k)] * pG.du[static_cast<std::size_t>(h)] -
                 pF.du[static_cast<std::size_t>(h)] * pG.dZ[static_cast<std::size_t>(k)]) *
                rho[rho_index(n, h, k)];

  return structure + anchor;
}

double jacobi_residual(const AlgebroidChart& chart, const FiberPolynomial& F,
                       const FiberPolynomial& G, const FiberPolynomial& H, const VecD& u,
                       const VecD& Z, const numkit::Tolerances& tol) {
  auto inner = [&](const FiberPolynomial& a, const FiberPolynomial& b) {
    return DualFunction([&chart, &tol, a, b](const VecD& uu, const VecD& ZZ) {
      return lie_poisson_bracket(DualFunction(a), DualFunction(b), uu, ZZ, chart, tol);
    });
  };
  const double s1 = lie_poisson_bracket(DualFunction(F), inner(G, H), u, Z, chart, tol);
  const double s2 = lie_poisson_bracket(DualFunction(G), inner(H, F), u, Z, chart, tol);
  const double s3 = lie_poisson_bracket(DualFunction(H), inner(F, G), u, Z, chart, tol);
  return std::fabs(s1 + s2 + s3);
}

}  // namespace qlab::liepoisson
