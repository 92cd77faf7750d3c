#pragma once

#include <functional>

#include "qlab/numkit/grid.hpp"
#include "qlab/poismap/geometry.hpp"

namespace qlab::poismap {

// Scalar observables on the tangent bundle and on the base. Complex values
// are allowed so mode functions can be used directly; the bracket acts on
// real and imaginary parts separately.
using TPFunction = std::function<cplx(const Point&, const Tangent&)>;
using BaseFunction = std::function<cplx(const Point&)>;

// Vertical derivative of the bivector along u: the t-derivative at 0 of the
// transported-back eta along the geodesic through x in direction u/||u||,
// scaled by ||u||. Returned as the antisymmetric component matrix (rank x
// rank) in the orthonormal tangent basis at x. Vanishes exactly for a
// constant form on the flat torus and numerically for the parallel sphere
// form.
std::vector<double> vertical_derivative_eta(const Point& x, const Tangent& u,
                                            const PoissonGeometry& geom,
                                            const numkit::Tolerances& tol);

double max_abs(const std::vector<double>& m);

// Poisson bracket on TP at the point (x, u):
//   {f,g}(v) = <Deta(v), d1 f ^ d1 g> + <eta(x), d1 f ^ d2 g - d1 g ^ d2 f>,
// d1 the fiber derivative and d2 the horizontal derivative along the
// connection, both by fourth-order central differences with tol.fd_step.
cplx tp_bracket(const TPFunction& f, const TPFunction& g, const Point& x, const Tangent& u,
                const PoissonGeometry& geom, const numkit::Tolerances& tol);

// {f,g}_P(y) = <eta(y), df ^ dg> with differentials along basis geodesics.
cplx base_bracket(const BaseFunction& f, const BaseFunction& g, const Point& y,
                  const PoissonGeometry& geom, const numkit::Tolerances& tol);

using CandidateMap = std::function<Point(const Point&, const Tangent&)>;

// |{pi*f, pi*g}_TP(x, u) - {f, g}_P(pi(x, u))|; zero exactly when pi respects
// the brackets on the pair (f, g) at this point.
double poisson_map_residual(const CandidateMap& pi, const Point& x, const Tangent& u,
                            const PoissonGeometry& geom, const BaseFunction& f,
                            const BaseFunction& g, const numkit::Tolerances& tol);

// Smallest battery whose differentials span the cotangent space: unit-mode
// characters on the torus, ambient coordinates on the sphere.
std::vector<BaseFunction> coordinate_test_functions(const PoissonGeometry& geom);

// max residual over all pairs from the coordinate battery
double poisson_map_residual_battery(const CandidateMap& pi, const Point& x, const Tangent& u,
                                    const PoissonGeometry& geom, const numkit::Tolerances& tol);

CandidateMap make_pi_torus();
CandidateMap make_pi_sphere(RadialProfile profile);

}  // namespace qlab::poismap
