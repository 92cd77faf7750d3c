#include "qlab/poismap/tp_bracket.hpp"

#include <cmath>

#include "qlab/numkit/finite_diff.hpp"

namespace qlab::poismap {

namespace {

// antisymmetric component matrix of the bivector in the given basis
std::vector<double> eta_components(const Bivector& B, const std::vector<Tangent>& basis) {
  const std::size_t k = basis.size();
  std::vector<double> M(k * k, 0.0);
  for (const auto& w : B)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        M[i * k + j] +=
            w.weight * (vdot(w.s1, basis[i]) * vdot(w.s2, basis[j]) -
                        vdot(w.s1, basis[j]) * vdot(w.s2, basis[i]));
  return M;
}

// <B, a ^ b> = sum_ij M_ij a_i b_j for the full antisymmetric component
// matrix M of B
cplx pair_components(const std::vector<double>& M, const std::vector<cplx>& a,
                     const std::vector<cplx>& b) {
  const std::size_t k = a.size();
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s += M[i * k + j] * a[i] * b[j];
  return s;
}

struct TPPartials {
  std::vector<cplx> d1;  // fiber covector components
  std::vector<cplx> d2;  // horizontal covector components
};

TPPartials tp_partials(const TPFunction& f, const Point& x, const Tangent& u,
                       const PoissonGeometry& geom, const std::vector<Tangent>& basis,
                       double h) {
  TPPartials p;
  p.d1.resize(basis.size());
  p.d2.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    p.d1[i] = numkit::central_diff1(
        [&](double t) { return f(x, vadd(u, vscale(t, basis[i]))); }, 0.0, h);
    p.d2[i] = numkit::central_diff1(
        [&](double t) {
          const Point xt = geom.geodesic(x, basis[i], t);
          return f(xt, geom.transport(x, basis[i], t, u));
        },
        0.0, h);
  }
  return p;
}

}  // namespace

double max_abs(const std::vector<double>& m) {
  double worst = 0.0;
  for (double v : m) worst = std::max(worst, std::fabs(v));
  return worst;
}

std::vector<double> vertical_derivative_eta(const Point& x, const Tangent& u,
                                            const PoissonGeometry& geom,
                                            const numkit::Tolerances& tol) {
  const auto basis = geom.tangent_basis(x);
  const std::size_t k = basis.size();
  std::vector<double> out(k * k, 0.0);
  const double speed = vnorm(u);
  if (speed == 0.0) return out;
  const Tangent dir = vscale(1.0 / speed, u);

  auto components_at = [&](double t) {
    const Point ct = geom.geodesic(x, dir, t);
    Bivector back = geom.eta(ct);
    if (t != 0.0) {
      // transport each spanning vector back along the reversed geodesic
      const Tangent forward = geom.transport(x, dir, t, dir);
      const Tangent reversed = vscale(-1.0, forward);
      for (auto& w : back) {
        w.s1 = geom.transport(ct, reversed, t, w.s1);
        w.s2 = geom.transport(ct, reversed, t, w.s2);
      }
    }
    return eta_components(back, basis);
  };

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = speed * numkit::central_diff1(
                                   [&](double t) { return components_at(t)[i * k + j]; }, 0.0,
                                   tol.fd_step);
      out[i * k + j] = d;
      out[j * k + i] = -d;
    }
  return out;
}

cplx tp_bracket(const TPFunction& f, const TPFunction& g, const Point& x, const Tangent& u,
                const PoissonGeometry& geom, const numkit::Tolerances& tol) {
  const auto basis = geom.tangent_basis(x);
  const auto pf = tp_partials(f, x, u, geom, basis, tol.fd_step);
  const auto pg = tp_partials(g, x, u, geom, basis, tol.fd_step);

  const auto deta = vertical_derivative_eta(x, u, geom, tol);
  const auto eta = eta_components(geom.eta(x), basis);

  return pair_components(deta, pf.d1, pg.d1) + pair_components(eta, pf.d1, pg.d2) -
         pair_components(eta, pg.d1, pf.d2);
}

cplx base_bracket(const BaseFunction& f, const BaseFunction& g, const Point& y,
                  const PoissonGeometry& geom, const numkit::Tolerances& tol) {
  const auto basis = geom.tangent_basis(y);
  std::vector<cplx> df(basis.size()), dg(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    df[i] = numkit::central_diff1([&](double t) { return f(geom.geodesic(y, basis[i], t)); }, 0.0,
                                  tol.fd_step);
    dg[i] = numkit::central_diff1([&](double t) { return g(geom.geodesic(y, basis[i], t)); }, 0.0,
                                  tol.fd_step);
  }
  return pair_components(eta_components(geom.eta(y), basis), df, dg);
}

double poisson_map_residual(const CandidateMap& pi, const Point& x, const Tangent& u,
                            const PoissonGeometry& geom, const BaseFunction& f,
                            const BaseFunction& g, const numkit::Tolerances& tol) {
  TPFunction pf = [&](const Point& xx, const Tangent& uu) { return f(pi(xx, uu)); };
  TPFunction pg = [&](const Point& xx, const Tangent& uu) { return g(pi(xx, uu)); };
  const cplx lhs = tp_bracket(pf, pg, x, u, geom, tol);
  const cplx rhs = base_bracket(f, g, pi(x, u), geom, tol);
  return std::abs(lhs - rhs);
}

std::vector<BaseFunction> coordinate_test_functions(const PoissonGeometry& geom) {
  std::vector<BaseFunction> fns;
  if (geom.tangent_rank() == geom.ambient_dim()) {
    // torus: unit-mode characters
    for (int k = 0; k < geom.ambient_dim(); ++k)
      fns.push_back([k](const Point& q) { return std::polar(1.0, q[static_cast<std::size_t>(k)]); });
  } else {
    // sphere: ambient coordinates
    for (int k = 0; k < geom.ambient_dim(); ++k)
      fns.push_back(
          [k](const Point& y) { return cplx(y[static_cast<std::size_t>(k)], 0.0); });
  }
  return fns;
}

double poisson_map_residual_battery(const CandidateMap& pi, const Point& x, const Tangent& u,
                                    const PoissonGeometry& geom, const numkit::Tolerances& tol) {
  const auto fns = coordinate_test_functions(geom);
  double worst = 0.0;
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = i + 1; j < fns.size(); ++j)
      worst = std::max(worst, poisson_map_residual(pi, x, u, geom, fns[i], fns[j], tol));
  return worst;
}

CandidateMap make_pi_torus() {
  return [](const Point& p, const Tangent& u) { return pi_torus(p, u); };
}

CandidateMap make_pi_sphere(RadialProfile profile) {
  return [profile = std::move(profile)](const Point& p, const Tangent& u) {
    const SpherePoint base(to_vec3(p));
    return from_vec3(pi_sphere(SphereTangent(base, to_vec3(u)), profile).p);
  };
}

}  // namespace qlab::poismap
