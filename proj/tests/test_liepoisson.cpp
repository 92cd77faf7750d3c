#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qlab/liepoisson/bracket.hpp"
#include "qlab/liepoisson/chart.hpp"
#include "qlab/liepoisson/classify.hpp"
#include "qlab/rng.hpp"

using namespace qlab;
using namespace qlab::liepoisson;

namespace {

const numkit::Tolerances kTol{};

FiberPolynomial base_variable(int m, int n, int h) {
  FiberPolynomial f(m, n);
  f.set_term(std::vector<int>(static_cast<std::size_t>(n), 0), UPoly::variable(m, h));
  return f;
}

FiberPolynomial random_poly(Rng& rng, int m, int n, int max_degree = 2) {
  FiberPolynomial f(m, n);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    const int degree = static_cast<int>(rng.uniform_int(0, max_degree));
    for (int d = 0; d < degree; ++d)
      alpha[static_cast<std::size_t>(rng.uniform_int(0, n - 1))] += 1;
    if (m > 0 && rng.uniform() < 0.5) {
      UPoly c = UPoly::constant(m, rng.uniform(-1.0, 1.0)) +
                UPoly::variable(m, static_cast<int>(rng.uniform_int(0, m - 1))) *
                    rng.uniform(-1.0, 1.0);
      f.set_term(std::move(alpha), std::move(c));
    } else {
      f.set_term(std::move(alpha), rng.uniform(-1.0, 1.0));
    }
  }
  return f;
}

}  // namespace

TEST_CASE("canonical pair on the 1-d tangent chart") {
  const auto chart = AlgebroidChart::tangent(1);
  const auto Z = FiberPolynomial::coordinate(1, 1, 0);
  const auto u = base_variable(1, 1, 0);
  for (double uu : {-1.0, 0.0, 2.0})
    for (double zz : {-0.5, 0.0, 1.5}) {
      CHECK(lie_poisson_bracket(Z, u, {uu}, {zz}, chart, kTol) == doctest::Approx(1.0));
      CHECK(lie_poisson_bracket(u, Z, {uu}, {zz}, chart, kTol) == doctest::Approx(-1.0));
    }
}

TEST_CASE("bracket of a function with itself vanishes") {
  const auto chart = AlgebroidChart::so3();
  Rng rng(11);
  const auto F = random_poly(rng, 0, 3);
  CHECK(std::fabs(lie_poisson_bracket(F, F, {}, {0.3, -0.4, 1.1}, chart, kTol)) < 1e-12);
}

TEST_CASE("so(3)-type coordinate bracket") {
  const auto chart = AlgebroidChart::so3();
  const auto Z1 = FiberPolynomial::coordinate(0, 3, 0);
  const auto Z2 = FiberPolynomial::coordinate(0, 3, 1);
  // {Z1, Z2} = (B^j_{21} - B^j_{12}) Z_j = -Z3
  const VecD Z{0.7, -0.2, 1.3};
  CHECK(lie_poisson_bracket(Z1, Z2, {}, Z, chart, kTol) == doctest::Approx(-1.3));

  // the finite-difference path agrees
  DualFunction f1([](const VecD&, const VecD& z) { return z[0]; });
  DualFunction f2([](const VecD&, const VecD& z) { return z[1]; });
  CHECK(lie_poisson_bracket(f1, f2, {}, Z, chart, kTol) == doctest::Approx(-1.3).epsilon(1e-10));
}

TEST_CASE("jacobi residual distinguishes genuine structure data") {
  const auto Z1 = FiberPolynomial::coordinate(0, 3, 0);
  const auto Z2 = FiberPolynomial::coordinate(0, 3, 1);
  const auto Z3 = FiberPolynomial::coordinate(0, 3, 2);
  const VecD Z{1.0, 1.0, 1.0};

  CHECK(jacobi_residual(AlgebroidChart::so3(), Z1, Z2, Z3, {}, Z, kTol) < 1e-9);
  CHECK(jacobi_residual(AlgebroidChart::abelian(0, 3), Z1, Z2, Z3, {}, Z, kTol) == 0.0);

  // scaling one structure entry keeps a genuine Lie algebra (a rescaled basis
  // of the same bracket), so the residual stays at noise level
  std::vector<double> B(27, 0.0);
  B[b_index(3, 2, 0, 1)] = 1.1;
  B[b_index(3, 0, 1, 2)] = 1.0;
  B[b_index(3, 1, 2, 0)] = 1.0;
  const auto scaled = AlgebroidChart::make_constant(0, 3, std::move(B), {});
  CHECK(jacobi_residual(scaled, Z1, Z2, Z3, {}, Z, kTol) < 1e-9);

  // an off-diagonal perturbation genuinely breaks the identity:
  // {Z3,{Z1,Z2}} picks up eps*Z2 while the other cyclic terms stay zero
  const auto broken = AlgebroidChart::so3_jacobi_breaking(0.1);
  const double r = jacobi_residual(broken, Z1, Z2, Z3, {}, Z, kTol);
  CHECK(r > 1e-3);
  CHECK(r == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("quantisable classification") {
  FiberPolynomial momentum(0, 2);
  momentum.set_term({1, 0}, 1.0);
  CHECK(classify_quantisable(momentum) == QuantisableTag::FiberPolynomial);

  CompactCharacterRep character{VecD{0.5, 0.0}};
  CHECK(classify_quantisable(character) == QuantisableTag::CompactCharacter);

  FourierOfCompactRep fourier{[](const VecD& xi) { return xi[0] < 1.0 ? 1.0 : 0.0; }, 1.0};
  CHECK(classify_quantisable(fourier) == QuantisableTag::FourierOfCompact);

  OpaqueCallableRep opaque{[](const VecD& X) { return std::exp(X[0] * X[0]); }};
  CHECK(!classify_quantisable(opaque).has_value());
}

TEST_CASE("antisymmetry at random points") {
  const auto chart = AlgebroidChart::tangent(2);
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    DualFunction f([](const VecD& u, const VecD& Z) { return std::sin(u[0]) * Z[1] + Z[0] * Z[0]; });
    DualFunction g([](const VecD& u, const VecD& Z) { return std::cos(u[1] + Z[0]) * Z[1]; });
    const VecD u{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const VecD Z{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double fg = lie_poisson_bracket(f, g, u, Z, chart, kTol);
    const double gf = lie_poisson_bracket(g, f, u, Z, chart, kTol);
    CHECK(std::fabs(fg + gf) < 1e-10);
  }
}

TEST_CASE("Leibniz rule in finite-difference mode") {
  const auto chart = AlgebroidChart::so3();
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto F = random_poly(rng, 0, 3);
    const auto G = random_poly(rng, 0, 3);
    const auto H = random_poly(rng, 0, 3);
    const VecD Z{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    auto wrap = [](const FiberPolynomial& p) {
      return DualFunction([p](const VecD& uu, const VecD& ZZ) { return p.eval(uu, ZZ); });
    };
    const auto FG = fiber_multiply(F, G);
    const double lhs = lie_poisson_bracket(wrap(FG), wrap(H), {}, Z, chart, kTol);
    const double rhs = F.eval({}, Z) * lie_poisson_bracket(wrap(G), wrap(H), {}, Z, chart, kTol) +
                       lie_poisson_bracket(wrap(F), wrap(H), {}, Z, chart, kTol) * G.eval({}, Z);
    CHECK(std::fabs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("exact and finite-difference paths agree at fourth order") {
  const auto chart = AlgebroidChart::tangent(1);
  // sixth powers leave a nonzero fifth derivative for the stencil to miss
  FiberPolynomial F(1, 1);
  F.set_term({6}, 1.0);
  FiberPolynomial G(1, 1);
  UPoly u6 = UPoly::variable(1, 0);
  for (int k = 1; k < 6; ++k) u6 = u6 * UPoly::variable(1, 0);
  G.set_term({0}, u6);

  const VecD u{0.8}, Z{0.9};
  const double exact = lie_poisson_bracket(F, G, u, Z, chart, kTol);

  auto wrap = [](const FiberPolynomial& p) {
    return DualFunction([p](const VecD& uu, const VecD& ZZ) { return p.eval(uu, ZZ); });
  };
  auto fd_error = [&](double step) {
    numkit::Tolerances t = kTol;
    t.fd_step = step;
    return std::fabs(lie_poisson_bracket(wrap(F), wrap(G), u, Z, chart, t) - exact);
  };
  const double e1 = fd_error(0.2);
  const double e2 = fd_error(0.1);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("base functions Poisson-commute exactly") {
  const auto chart = AlgebroidChart::tangent(2);
  const auto f = base_variable(2, 2, 0);
  const auto g = base_variable(2, 2, 1);
  CHECK(lie_poisson_bracket(f, g, {0.4, -0.6}, {1.0, 2.0}, chart, kTol) == 0.0);
  // the finite-difference path also lands exactly on zero
  DualFunction fc([](const VecD& u, const VecD&) { return std::sin(u[0]) + u[1] * u[1]; });
  DualFunction gc([](const VecD& u, const VecD&) { return std::cos(u[0] * u[1]); });
  CHECK(lie_poisson_bracket(fc, gc, {0.4, -0.6}, {1.0, 2.0}, chart, kTol) == 0.0);
}

TEST_CASE("chart files") {
  const std::string path = "test_chart_so3.cfg";
  {
    std::ofstream out(path);
    out << "# so(3)-type structure constants\n";
    out << "base_dim = 0\n";
    out << "fiber_dim = 3\n";
    // B[j][k][h] with B^3_{12} = B^1_{23} = B^2_{31} = 1
    std::vector<double> B(27, 0.0);
    B[b_index(3, 2, 0, 1)] = 1.0;
    B[b_index(3, 0, 1, 2)] = 1.0;
    B[b_index(3, 1, 2, 0)] = 1.0;
    out << "B = [";
    for (std::size_t i = 0; i < B.size(); ++i) out << (i ? "," : "") << B[i];
    out << "]\n";
    out << "rho = []\n";
  }
  const auto chart = AlgebroidChart::load_file(path);
  CHECK(chart.base_dim == 0);
  CHECK(chart.fiber_dim == 3);
  const auto Z1 = FiberPolynomial::coordinate(0, 3, 0);
  const auto Z2 = FiberPolynomial::coordinate(0, 3, 1);
  CHECK(lie_poisson_bracket(Z1, Z2, {}, {0.0, 0.0, 2.0}, chart, kTol) == doctest::Approx(-2.0));
  std::remove(path.c_str());

  const std::string bad = "test_chart_bad.cfg";
  {
    std::ofstream out(bad);
    out << "base_dim = 0\nfiber_dim = 3\nB = [1,2,3]\n";
  }
  try {
    AlgebroidChart::load_file(bad);
    FAIL("expected missing-key failure");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("missing key: rho") != std::string::npos);
  }
  std::remove(bad.c_str());
}

TEST_CASE("chart shape validation") {
  AlgebroidChart chart;
  chart.base_dim = 1;
  chart.fiber_dim = 2;
  chart.B = [](const VecD&) { return std::vector<double>(7, 0.0); };  // wrong size
  chart.rho = [](const VecD&) { return std::vector<double>(2, 0.0); };
  CHECK_THROWS_AS(chart.B_at({0.0}), DimensionMismatch);
  CHECK_NOTHROW(chart.rho_at({0.0}));
}
