#include <doctest.h>

#include <cmath>

#include "qlab/cli/symbol_parser.hpp"
#include "qlab/nctorus/algebra.hpp"
#include "qlab/numkit/finite_diff.hpp"
#include "qlab/numkit/grid.hpp"
#include "qlab/rng.hpp"
#include "qlab/weylrn/quantise.hpp"

using namespace qlab;
using namespace qlab::weylrn;
using qlab::numkit::PeriodicGrid;

namespace {

std::vector<cplx> plane_wave(const PeriodicGrid& g, const std::vector<int>& m) {
  std::vector<cplx> H(g.total_nodes());
  for (std::size_t j = 0; j < H.size(); ++j) {
    const VecD p = g.node(j);
    double phase = 0.0;
    for (std::size_t d = 0; d < p.size(); ++d) phase += m[d] * p[d];
    H[j] = std::polar(1.0, phase);
  }
  return H;
}

double max_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<cplx> scale(const std::vector<cplx>& v, cplx s) {
  std::vector<cplx> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

}  // namespace

TEST_CASE("momentum symbol multiplies plane waves by hbar m") {
  const PeriodicGrid g(1, 16);
  const auto X = SymbolRn::fiber_coordinate(1, 0);
  const auto H = plane_wave(g, {3});
  const auto out = quantise(X, 0.5, g).apply(H);
  CHECK(max_dist(out, scale(H, cplx(1.5, 0.0))) < 1e-12);
}

TEST_CASE("base symbols act by multiplication, independent of hbar") {
  const PeriodicGrid g(1, 16);
  const auto a = SymbolRn::base_coefficient(TrigPoly::cosine({2}));
  const auto H = plane_wave(g, {1});
  const auto out0 = quantise(a, 0.0, g).apply(H);
  const auto out7 = quantise(a, 7.0, g).apply(H);
  for (std::size_t j = 0; j < H.size(); ++j) {
    const cplx expect = std::cos(2.0 * g.node(j)[0]) * H[j];
    CHECK(std::abs(out0[j] - expect) < 1e-13);
    CHECK(std::abs(out7[j] - expect) < 1e-13);
  }
}

TEST_CASE("derivatives annihilate constants; the identity fixes everything") {
  const PeriodicGrid g(1, 16);
  const auto X2 = symbol_mul(SymbolRn::fiber_coordinate(1, 0), SymbolRn::fiber_coordinate(1, 0));
  const std::vector<cplx> constant(g.total_nodes(), cplx(2.0, -1.0));
  const auto out = quantise(X2, 0.7, g).apply(constant);
  CHECK(max_dist(out, std::vector<cplx>(g.total_nodes(), cplx(0.0, 0.0))) < 1e-13);

  const auto one = SymbolRn::constant(1, cplx(1.0, 0.0));
  const auto H = plane_wave(g, {2});
  CHECK(max_dist(quantise(one, 0.3, g).apply(H), H) < 1e-14);
}

TEST_CASE("composition squares the plane-wave eigenvalue") {
  const PeriodicGrid g(1, 16);
  const auto X = SymbolRn::fiber_coordinate(1, 0);
  const auto op = quantise(X, 0.5, g);
  const auto H = plane_wave(g, {3});
  const auto out = op.apply(op.apply(H));
  CHECK(max_dist(out, scale(H, cplx(2.25, 0.0))) < 1e-12);
}

TEST_CASE("derivative of a real even function is imaginary and odd") {
  const PeriodicGrid g(1, 32);
  std::vector<cplx> H(g.total_nodes());
  for (std::size_t j = 0; j < H.size(); ++j) H[j] = std::cos(3.0 * g.node(j)[0]);
  const auto out = quantise(SymbolRn::fiber_coordinate(1, 0), 0.5, g).apply(H);
  const int N = g.points_per_dim();
  for (int j = 0; j < N; ++j) {
    CHECK(std::fabs(out[static_cast<std::size_t>(j)].real()) < 1e-13);
    const int mirrored = (N - j) % N;
    CHECK(out[static_cast<std::size_t>(j)].imag() ==
          doctest::Approx(-out[static_cast<std::size_t>(mirrored)].imag()).epsilon(1e-12));
  }
}

TEST_CASE("plane-wave eigenrelation across powers and modes") {
  const PeriodicGrid g(1, 32);
  for (int power = 0; power <= 4; ++power) {
    SymbolRn f = SymbolRn::constant(1, cplx(1.0, 0.0));
    for (int k = 0; k < power; ++k) f = symbol_mul(f, SymbolRn::fiber_coordinate(1, 0));
    for (int m = -8; m <= 8; ++m) {
      const double hbar = 0.5;
      const auto H = plane_wave(g, {m});
      double lambda = 1.0;
      for (int k = 0; k < power; ++k) lambda *= hbar * m;
      const double dev = max_dist(quantise(f, hbar, g).apply(H), scale(H, cplx(lambda, 0.0)));
      CHECK(dev <= 1e-12 * std::max(1.0, std::fabs(lambda)));
    }
  }
}

TEST_CASE("hbar = 0 reduces to multiplication by the zero-section value") {
  const PeriodicGrid g(1, 16);
  // f = X^2 + cos(p) X + sin(2p): at X = 0 only sin(2p) survives
  SymbolRn f(1);
  f.add_term({2}, TrigPoly::constant(1, cplx(1.0, 0.0)));
  f.add_term({1}, TrigPoly::cosine({1}));
  f.add_term({0}, TrigPoly::sine({2}));
  const auto H = plane_wave(g, {1});
  const auto out = quantise(f, 0.0, g).apply(H);
  for (std::size_t j = 0; j < H.size(); ++j)
    CHECK(std::abs(out[j] - std::sin(2.0 * g.node(j)[0]) * H[j]) < 1e-13);
}

TEST_CASE("quantise is linear and multiplicative at hbar = 0") {
  const PeriodicGrid g(1, 32);
  SymbolRn f(1);
  f.add_term({1}, TrigPoly::cosine({1}));
  f.add_term({0}, TrigPoly::sine({1}));
  SymbolRn h(1);
  h.add_term({2}, TrigPoly::constant(1, cplx(0.5, 0.0)));
  h.add_term({0}, TrigPoly::cosine({2}));

  const auto H = plane_wave(g, {2});
  const double hbar = 0.3;
  const auto sum_applied = quantise(symbol_add(f, h), hbar, g).apply(H);
  std::vector<cplx> separate = quantise(f, hbar, g).apply(H);
  const auto hh = quantise(h, hbar, g).apply(H);
  for (std::size_t j = 0; j < separate.size(); ++j) separate[j] += hh[j];
  CHECK(max_dist(sum_applied, separate) < 1e-13);

  const auto left = quantise(f, 0.0, g).apply(quantise(h, 0.0, g).apply(H));
  const auto right = quantise(symbol_mul(f, h), 0.0, g).apply(H);
  CHECK(max_dist(left, right) < 1e-12);
}

TEST_CASE("canonical pair commutes exactly up to the bracket") {
  const PeriodicGrid g(1, 64);
  const auto X = SymbolRn::fiber_coordinate(1, 0);
  const auto a = SymbolRn::base_coefficient(TrigPoly::cosine({1}));
  Rng rng(4);
  TrigPoly Hp(1);
  for (int k = 0; k < 5; ++k)
    Hp.add_to({static_cast<int>(rng.uniform_int(-8, 8))},
              cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
  std::vector<cplx> H(g.total_nodes());
  for (std::size_t j = 0; j < H.size(); ++j) H[j] = Hp.eval(g.node(j));

  for (double hbar : {1.0, 0.1, 0.01})
    CHECK(commutator_check(X, a, hbar, H, g) <= 1e-10);
}

TEST_CASE("degree-two symbols leave a first-order commutator remainder") {
  const PeriodicGrid g(1, 64);
  const auto X2 = symbol_mul(SymbolRn::fiber_coordinate(1, 0), SymbolRn::fiber_coordinate(1, 0));
  const auto s = SymbolRn::base_coefficient(TrigPoly::sine({1}));
  const auto H = plane_wave(g, {3});

  VecD hbars{0.1, 0.05, 0.025}, devs;
  for (double hbar : hbars) devs.push_back(commutator_check(X2, s, hbar, H, g));
  const double slope = numkit::fit_loglog_slope(hbars, devs);
  CHECK(slope > 0.9);
  CHECK(slope < 1.1);

  // the remainder is exactly hbar * max |sin(p) H(p)| for this pair
  double expected = 0.0;
  for (std::size_t j = 0; j < H.size(); ++j)
    expected = std::max(expected, std::abs(std::sin(g.node(j)[0]) * H[j]));
  CHECK(devs[0] == doctest::Approx(0.1 * expected).epsilon(1e-8));
}

TEST_CASE("tagged quantisation accepts constant-coefficient polynomials only") {
  const PeriodicGrid g(1, 16);
  liepoisson::FiberPolynomial poly(1, 1);
  poly.set_term({1}, 2.0);
  const auto H = plane_wave(g, {3});
  const auto out = quantise(liepoisson::QuantisableFunction(poly), 0.5, g).apply(H);
  CHECK(max_dist(out, scale(H, cplx(3.0, 0.0))) < 1e-12);

  liepoisson::FiberPolynomial varying(1, 1);
  varying.set_term({1}, liepoisson::UPoly::variable(1, 0));
  CHECK_THROWS_AS(quantise(liepoisson::QuantisableFunction(varying), 0.5, g), UnsupportedSymbol);
  CHECK_THROWS_AS(
      quantise(liepoisson::QuantisableFunction(liepoisson::CompactCharacterRep{{0.5}}), 0.5, g),
      UnsupportedSymbol);

  CHECK_THROWS_AS(quantise(SymbolRn::fiber_coordinate(1, 0), 0.5, PeriodicGrid(2, 8)),
                  DimensionMismatch);
}

TEST_CASE("parallel operator application matches the serial reference") {
  const PeriodicGrid g(2, 12);
  SymbolRn f(2);
  f.add_term({1, 1}, TrigPoly::cosine({1, 0}));
  f.add_term({0, 2}, TrigPoly::constant(2, cplx(0.5, 0.25)));
  Rng rng(6);
  std::vector<cplx> H(g.total_nodes());
  for (auto& v : H) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const auto op = quantise(f, 0.3, g);
  CHECK(max_dist(op.apply(H), op.apply_serial(H)) < 1e-13);
}

TEST_CASE("symbol expression parser") {
  const PeriodicGrid g(1, 16);
  const auto H = plane_wave(g, {2});

  // "X" acts as -i hbar d/dp
  const auto fX = cli::parse_symbol("X", 1);
  CHECK(max_dist(quantise(fX, 0.5, g).apply(H), scale(H, cplx(1.0, 0.0))) < 1e-12);

  // mixed expression evaluates to the right nodal symbol at X = 0
  const auto f = cli::parse_symbol("0.5*X^2 - cos(2p) + sin(p)", 1);
  const auto out = quantise(f, 0.0, g).apply(H);
  for (std::size_t j = 0; j < H.size(); ++j) {
    const double p = g.node(j)[0];
    CHECK(std::abs(out[j] - (std::sin(p) - std::cos(2.0 * p)) * H[j]) < 1e-13);
  }

  // two dimensions with explicit indices
  const auto f2 = cli::parse_symbol("cos(p2)*X1*X2", 2);
  CHECK(f2.n == 2);
  CHECK(f2.max_fiber_degree() == 2);

  CHECK_THROWS_AS(cli::parse_symbol("X^", 1), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_symbol("tan(p)", 1), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_symbol("X3", 2), InvalidArgument);
}
