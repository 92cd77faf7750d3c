#include <doctest.h>

#include <cmath>

#include "qlab/numkit/finite_diff.hpp"
#include "qlab/poismap/geometry.hpp"
#include "qlab/poismap/profile.hpp"
#include "qlab/poismap/sampling.hpp"
#include "qlab/poismap/sphere.hpp"
#include "qlab/poismap/tp_bracket.hpp"
#include "qlab/skew_form.hpp"

using namespace qlab;
using namespace qlab::poismap;

namespace {

constexpr double kPi = 3.14159265358979323846;
const numkit::Tolerances kTol{};

bool close(const Vec3& a, const Vec3& b, double tol) { return norm(a - b) <= tol; }

}  // namespace

TEST_CASE("exponential map closed form") {
  const SpherePoint north(Vec3{0.0, 0.0, 1.0});
  CHECK(close(exp_sphere(SphereTangent(north, Vec3{0.0, 0.0, 0.0})).p, north.p, 0.0));
  CHECK(close(exp_sphere(SphereTangent(north, Vec3{kPi, 0.0, 0.0})).p, Vec3{0.0, 0.0, -1.0},
              1e-12));
  CHECK(close(exp_sphere(SphereTangent(north, Vec3{kPi / 2.0, 0.0, 0.0})).p, Vec3{1.0, 0.0, 0.0},
              1e-12));
}

TEST_CASE("point and tangent validation") {
  CHECK_THROWS_AS(SpherePoint(Vec3{0.0, 0.0, 1.1}), InvalidArgument);
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  CHECK_THROWS_AS(SphereTangent(p, Vec3{0.0, 0.1, 0.5}), InvalidArgument);
}

TEST_CASE("exponential map stays on the sphere and is additive along rays") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 2.5);
    const SpherePoint out = exp_sphere(SphereTangent(SpherePoint(p), u));
    CHECK(std::fabs(norm(out.p) - 1.0) < 1e-12);
  }
  // distance additivity along a fixed ray, below the cut locus
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  const Vec3 dir{1.0, 0.0, 0.0};
  for (double s : {0.2, 0.5, 0.9}) {
    for (double t : {0.3, 0.7, 1.2}) {
      const Vec3 a = exp_sphere(SphereTangent(p, s * dir)).p;
      const Vec3 b = exp_sphere(SphereTangent(p, t * dir)).p;
      CHECK(std::fabs(std::acos(std::clamp(dot(a, b), -1.0, 1.0)) - std::fabs(t - s)) < 1e-10);
    }
  }
}

TEST_CASE("differentials at the zero section are the identity") {
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  const SphereTangent v(p, Vec3{0.0, 0.0, 0.0});
  const Vec3 h{0.3, -0.2, 0.0};
  CHECK(close(d1_exp(v, h), h, 0.0));
  CHECK(close(d2_exp(v, h), h, 0.0));
  CHECK(close(jacobi_dexp(v, h, Vec3{0.0, 0.0, 0.0}), h, 0.0));
}

TEST_CASE("base differential kills an orthogonal direction at a quarter turn") {
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  const SphereTangent v(p, Vec3{kPi / 2.0, 0.0, 0.0});
  const Vec3 eps{0.0, 1.0, 0.0};
  CHECK(norm(d2_exp(v, eps)) < 1e-15);
}

TEST_CASE("closed-form differentials match the defining variations") {
  Rng rng(92);
  double worst1 = 0.0, worst2 = 0.0, worstj = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.5);
    const SphereTangent v(SpherePoint(p), u);
    const Vec3 h = random_tangent(rng, p, 1.0);
    const Vec3 eps = random_tangent(rng, p, 1.0);
    const Vec3 vert = random_tangent(rng, p, 1.0);
    worst1 = std::max(worst1, norm(d1_exp(v, h) - d1_exp_fd(v, h, kTol.fd_step)));
    worst2 = std::max(worst2, norm(d2_exp(v, eps) - d2_exp_fd(v, eps, kTol.fd_step)));
    worstj = std::max(worstj,
                      norm(jacobi_dexp(v, h, vert) - jacobi_dexp_fd(v, h, vert, kTol.fd_step)));
  }
  CHECK(worst1 < 1e-7);
  CHECK(worst2 < 1e-7);
  CHECK(worstj < 1e-7);
}

TEST_CASE("differentials refuse conjugate-point territory") {
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  const SphereTangent v(p, Vec3{kPi, 0.0, 0.0});
  const Vec3 h{0.0, 1.0, 0.0};
  CHECK_THROWS_AS(d1_exp(v, h), OutOfChart);
  CHECK_THROWS_AS(d2_exp(v, h), OutOfChart);
  CHECK_THROWS_AS(jacobi_dexp(v, h, h), OutOfChart);
}

TEST_CASE("parallel transport along great circles") {
  const SpherePoint p(Vec3{0.0, 0.0, 1.0});
  const Vec3 eps{1.0, 0.0, 0.0};
  const Vec3 w{0.4, 0.7, 0.0};

  CHECK(close(parallel_transport_sphere(p, eps, 0.0, w), w, 0.0));
  CHECK(close(parallel_transport_sphere(p, eps, kPi / 2.0, eps), Vec3{0.0, 0.0, -1.0}, 1e-15));

  // the binormal direction is invariant
  const Vec3 binormal = cross(p.p, eps);
  for (double t : {0.3, 1.0, 2.5})
    CHECK(close(parallel_transport_sphere(p, eps, t, binormal), binormal, 1e-15));

  // orthogonal map: norms and tangency are preserved
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 q = random_sphere_point(rng);
    const Vec3 e = random_unit_tangent(rng, q);
    const Vec3 x = random_tangent(rng, q, 3.0);
    const double t = rng.uniform(0.0, 6.0);
    const Vec3 moved = parallel_transport_sphere(SpherePoint(q), e, t, x);
    const Vec3 endpoint = std::cos(t) * q + std::sin(t) * e;
    CHECK(std::fabs(norm(moved) - norm(x)) < 1e-12);
    CHECK(std::fabs(dot(moved, endpoint)) < 1e-12);
  }

  CHECK_THROWS_AS(parallel_transport_sphere(p, Vec3{2.0, 0.0, 0.0}, 0.1, w), InvalidArgument);
  CHECK_THROWS_AS(parallel_transport_sphere(p, eps, 0.1, Vec3{0.0, 0.0, 0.4}), InvalidArgument);
}

TEST_CASE("jacobi form of the differential") {
  Rng rng(66);
  // vertical initial velocity reproduces the fiber differential
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.5);
    const SphereTangent v(SpherePoint(p), u);
    const Vec3 vert = random_tangent(rng, p, 1.0);
    CHECK(close(jacobi_dexp(v, Vec3{0.0, 0.0, 0.0}, vert), d1_exp(v, vert), 1e-12));
  }

  // linear in the input pair
  const Vec3 p = random_sphere_point(rng);
  const Vec3 u = random_tangent(rng, p, 1.2);
  const SphereTangent v(SpherePoint(p), u);
  const Vec3 h1 = random_tangent(rng, p, 1.0), h2 = random_tangent(rng, p, 1.0);
  const Vec3 w1 = random_tangent(rng, p, 1.0), w2 = random_tangent(rng, p, 1.0);
  const Vec3 lhs = jacobi_dexp(v, h1 + 2.0 * h2, w1 + 2.0 * w2);
  const Vec3 rhs = jacobi_dexp(v, h1, w1) + 2.0 * jacobi_dexp(v, h2, w2);
  CHECK(close(lhs, rhs, 1e-12));
}

TEST_CASE("the assembled differential has rank two") {
  Rng rng(77);
  const RoundSphere sphere;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.5);
    const SphereTangent v(SpherePoint(p), u);
    const auto basis = sphere.tangent_basis(from_vec3(p));

    // 3 x 4 matrix: columns are the images of (b_i, 0) and (0, b_i)
    std::vector<Vec3> cols;
    for (const auto& b : basis) cols.push_back(jacobi_dexp(v, to_vec3(b), Vec3{}));
    for (const auto& b : basis) cols.push_back(jacobi_dexp(v, Vec3{}, to_vec3(b)));

    // eigenvalues of the 4x4 Gram matrix: exactly two above noise
    std::vector<double> gram(16, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        gram[static_cast<std::size_t>(i * 4 + j)] =
            dot(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    std::vector<double> values, vectors;
    detail::symmetric_eigen(4, gram, values, vectors);
    std::sort(values.begin(), values.end());
    CHECK(values[0] < 1e-12);
    CHECK(values[1] < 1e-12);
    CHECK(values[2] > 1e-4);
    CHECK(values[3] > 1e-4);
  }
}

TEST_CASE("radial profile closed form and helper identity") {
  CHECK(arcsin_profile_value(1.0) == doctest::Approx(std::asin(0.5)).epsilon(1e-15));
  // analytic limit 1/2 at zero and continuity across the series switch
  CHECK(arcsin_profile_value(1e-9) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::fabs(arcsin_profile_value(1e-4 * (1 - 1e-9)) -
                  arcsin_profile_value(1e-4 * (1 + 1e-9))) < 1e-14);

  // t f'(t) = cos t - f(t) for f = sin t / t
  for (double t = 1e-3; t <= 3.0; t += 0.037)
    CHECK(std::fabs(t * sinc_slope(t) + sinc(t) - std::cos(t)) < 1e-12);
}

TEST_CASE("profile equation integrates onto the closed-form family") {
  const auto traj = solve_profile_ode(0.0, 0.1, 0.05, 1.9, 1e-3);
  CHECK(compare_closed_form(traj, 0.0) < 1e-8);

  // a = 0.3 branch: alpha(0.5) = 0.3/0.5 + 0.25 = 0.85
  const auto other = solve_profile_ode(0.3, 0.5, 0.85, 1.9, 1e-3);
  CHECK(compare_closed_form(other, 0.3) < 1e-8);

  // reconstructed mu lands on arcsin(t/2)/t
  const auto mu = profile_from_trajectory(traj);
  double worst = 0.0;
  for (double t : traj.times)
    worst = std::max(worst, std::fabs(mu.mu(t) - arcsin_profile_value(t)));
  CHECK(worst < 1e-8);

  CHECK_THROWS_AS(solve_profile_ode(0.0, 0.0, 0.0, 1.0, 1e-3), InvalidArgument);
}

TEST_CASE("candidate maps") {
  // torus: p + u/2 mod 2*pi
  CHECK(pi_torus({0.0, 0.0}, {0.0, 0.0}) == Point{0.0, 0.0});
  const Point t1 = pi_torus({0.0, 0.0}, {kPi, 0.0});
  CHECK(t1[0] == doctest::Approx(kPi / 2.0));
  const Point t2 = pi_torus({3.0 * kPi / 2.0, 0.0}, {2.0 * kPi, 0.0});
  CHECK(t2[0] == doctest::Approx(kPi / 2.0));

  // sphere: the arcsin profile rescales u = (1,0,0) to length pi/6
  const SpherePoint north(Vec3{0.0, 0.0, 1.0});
  const auto arcsin = RadialProfile::arcsin_profile();
  CHECK(close(pi_sphere(SphereTangent(north, Vec3{0.0, 0.0, 0.0}), arcsin).p, north.p, 0.0));
  const Vec3 img = pi_sphere(SphereTangent(north, Vec3{1.0, 0.0, 0.0}), arcsin).p;
  CHECK(close(img, Vec3{0.5, 0.0, std::sqrt(3.0) / 2.0}, 1e-14));

  // the boundary maps a quarter turn away; beyond it is out of domain
  const Vec3 near_edge =
      pi_sphere(SphereTangent(north, Vec3{2.0 - 1e-12, 0.0, 0.0}), arcsin).p;
  CHECK(std::fabs(std::acos(std::clamp(dot(near_edge, north.p), -1.0, 1.0)) - kPi / 2.0) < 1e-5);
  CHECK_THROWS_AS(pi_sphere(SphereTangent(north, Vec3{2.0, 0.0, 0.0}), arcsin), OutOfDomain);
}

TEST_CASE("tangent-bundle bracket on the flat torus") {
  const FlatTorus torus(SkewForm::standard_2d(1.0));

  // pull-backs from the base commute exactly
  TPFunction pf = [](const Point& x, const Tangent&) { return cplx(std::sin(x[0]), 0.0); };
  TPFunction pg = [](const Point& x, const Tangent&) { return cplx(std::cos(x[1] + 0.3), 0.0); };
  CHECK(std::abs(tp_bracket(pf, pg, {0.4, 1.1}, {0.2, -0.7}, torus, kTol)) == 0.0);

  // constant form against a pull-back: <eta a, dh> at the base point
  TPFunction alpha = [](const Point&, const Tangent& u) { return cplx(u[0], 0.0); };
  for (double q2 : {0.0, 0.9, 2.5}) {
    TPFunction ph = [](const Point& x, const Tangent&) { return cplx(std::sin(x[1]), 0.0); };
    const cplx b = tp_bracket(alpha, ph, {0.4, q2}, {0.3, 0.8}, torus, kTol);
    CHECK(b.real() == doctest::Approx(std::cos(q2)).epsilon(1e-9));
    CHECK(std::fabs(b.imag()) < 1e-12);
  }

  // antisymmetry
  TPFunction f = [](const Point& x, const Tangent& u) {
    return cplx(std::sin(x[0]) * u[1] + u[0] * u[0], 0.0);
  };
  const cplx fg = tp_bracket(f, alpha, {0.4, 1.1}, {0.2, -0.7}, torus, kTol);
  const cplx gf = tp_bracket(alpha, f, {0.4, 1.1}, {0.2, -0.7}, torus, kTol);
  CHECK(std::abs(fg + gf) < 1e-10);
}

TEST_CASE("closed one-forms bracket into the derivative of the base bracket") {
  const RoundSphere sphere;
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.2);
    const int i = static_cast<int>(rng.uniform_int(0, 2));
    const int j = (i + 1 + static_cast<int>(rng.uniform_int(0, 1))) % 3;

    // alpha = d x_i, beta = d x_j as fiber-linear functions
    TPFunction alpha = [i](const Point&, const Tangent& uu) {
      return cplx(uu[static_cast<std::size_t>(i)], 0.0);
    };
    TPFunction beta = [j](const Point&, const Tangent& uu) {
      return cplx(uu[static_cast<std::size_t>(j)], 0.0);
    };
    const cplx lhs = tp_bracket(alpha, beta, from_vec3(p), from_vec3(u), sphere, kTol);

    // d{x_i, x_j} along u, with the inner bracket by its own route
    BaseFunction fi = [i](const Point& y) { return cplx(y[static_cast<std::size_t>(i)], 0.0); };
    BaseFunction fj = [j](const Point& y) { return cplx(y[static_cast<std::size_t>(j)], 0.0); };
    const double speed = norm(u);
    const Vec3 dir = (1.0 / speed) * u;
    const cplx rhs =
        speed * numkit::central_diff1(
                    [&](double t) {
                      const Point yt = sphere.geodesic(from_vec3(p), from_vec3(dir), t);
                      return base_bracket(fi, fj, yt, sphere, kTol);
                    },
                    0.0, kTol.fd_step);
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("sphere bracket of ambient coordinates is the cyclic coordinate rule") {
  // eta(p) = u ^ (p x u)/||u||^2 pairs dx ^ dy to the z-component, cyclically:
  // {x,y} = z, {y,z} = x, {z,x} = y
  const RoundSphere sphere;
  BaseFunction cx = [](const Point& y) { return cplx(y[0], 0.0); };
  BaseFunction cy = [](const Point& y) { return cplx(y[1], 0.0); };
  BaseFunction cz = [](const Point& y) { return cplx(y[2], 0.0); };
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Point y = from_vec3(p);
    CHECK(std::fabs(base_bracket(cx, cy, y, sphere, kTol).real() - p.z) < 1e-9);
    CHECK(std::fabs(base_bracket(cy, cz, y, sphere, kTol).real() - p.x) < 1e-9);
    CHECK(std::fabs(base_bracket(cz, cx, y, sphere, kTol).real() - p.y) < 1e-9);
  }
}

TEST_CASE("vertical derivative of the bivector vanishes on both geometries") {
  const FlatTorus torus(SkewForm::standard_2d(1.0));
  CHECK(max_abs(vertical_derivative_eta({0.3, 0.4}, {1.0, 2.0}, torus, kTol)) == 0.0);
  CHECK(max_abs(vertical_derivative_eta({0.3, 0.4}, {0.0, 0.0}, torus, kTol)) == 0.0);

  const RoundSphere sphere;
  Rng rng(41);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.5);
    worst = std::max(worst,
                     max_abs(vertical_derivative_eta(from_vec3(p), from_vec3(u), sphere, kTol)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("poisson map residuals") {
  const FlatTorus torus(SkewForm::standard_2d(1.0));
  const auto pit = make_pi_torus();
  Rng rng(51);
  double worst_torus = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Point x = random_torus_point(rng, 2);
    const Tangent u = random_torus_vector(rng, 2, 3.0);
    worst_torus = std::max(worst_torus, poisson_map_residual_battery(pit, x, u, torus, kTol));
  }
  CHECK(worst_torus < 1e-8);

  const RoundSphere sphere;
  const auto pis = make_pi_sphere(RadialProfile::arcsin_profile());
  double worst_sphere = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 p = random_sphere_point(rng);
    const Vec3 u = random_tangent(rng, p, 1.5);
    worst_sphere = std::max(
        worst_sphere, poisson_map_residual_battery(pis, from_vec3(p), from_vec3(u), sphere, kTol));
  }
  CHECK(worst_sphere < 1e-6);

  // negative control: the naive half profile fails visibly at ||u|| = 1
  const auto half = make_pi_sphere(RadialProfile::half_profile());
  const Vec3 p = random_sphere_point(rng);
  const Vec3 u = random_unit_tangent(rng, p);
  CHECK(poisson_map_residual_battery(half, from_vec3(p), from_vec3(u), sphere, kTol) >= 1e-2);
}

TEST_CASE("tabulated profiles interpolate") {
  const auto table = RadialProfile::from_table({0.5, 1.0, 1.5}, {0.25, 0.5, 0.75});
  CHECK(table.mu(0.75) == doctest::Approx(0.375));
  CHECK(table.mu(0.1) == doctest::Approx(0.25));  // clamped at the ends
  CHECK(table.mu(2.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(RadialProfile::from_table({1.0, 0.5}, {0.1, 0.2}), InvalidArgument);
}
