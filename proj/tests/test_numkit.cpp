#include <doctest.h>

#include <cmath>
#include <limits>

#include "qlab/numkit/dft.hpp"
#include "qlab/numkit/finite_diff.hpp"
#include "qlab/numkit/rk4.hpp"
#include "qlab/rng.hpp"

using namespace qlab;
using namespace qlab::numkit;

namespace {

// independent direct-summation oracle for 1-d coefficients
cplx dft_oracle_1d(const std::vector<cplx>& samples, int mode) {
  const int N = static_cast<int>(samples.size());
  cplx acc(0.0, 0.0);
  for (int j = 0; j < N; ++j)
    acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -kTwoPi * mode * j / N);
  return acc / static_cast<double>(N);
}

std::vector<cplx> sample_1d(const PeriodicGrid& g, const std::function<cplx(double)>& f) {
  std::vector<cplx> s(g.total_nodes());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(g.node(j)[0]);
  return s;
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(PeriodicGrid(1, 3), InvalidArgument);
  CHECK_THROWS_AS(PeriodicGrid(1, 2), InvalidArgument);
  CHECK_THROWS_AS(PeriodicGrid(0, 8), InvalidArgument);
  const PeriodicGrid g(2, 8);
  CHECK(g.total_nodes() == 64);
  CHECK(g.node(9) == VecD{kTwoPi / 8, kTwoPi / 8});
  CHECK(g.mode_from_bin(4) == 4);   // balanced set keeps +N/2
  CHECK(g.mode_from_bin(5) == -3);
  CHECK(g.bin_from_mode(-3) == 5);
}

TEST_CASE("tolerances and trajectory invariants") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.fd_step = 1.0;
  CHECK_THROWS_AS(t.validate(), InvalidArgument);
  CHECK_THROWS_AS(Trajectory({0.0, 0.0}, {1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(Trajectory({0.0, 1.0}, {1.0}), DimensionMismatch);
}

TEST_CASE("dft pure mode and constant") {
  const PeriodicGrid g(1, 16);
  const auto modes =
      dft_modes(g, sample_1d(g, [](double x) { return std::polar(1.0, 2.0 * x); }));
  CHECK(std::abs(modes.at({2}) - cplx(1.0, 0.0)) < 1e-12);
  for (const auto& [m, c] : modes)
    if (m != std::vector<int>{2}) CHECK(std::abs(c) < 1e-12);

  const auto flat = dft_modes(g, std::vector<cplx>(16, cplx(1.0, 0.0)));
  CHECK(std::abs(flat.at({0}) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("dft of cos x against the direct-summation oracle") {
  const PeriodicGrid g(1, 16);
  const auto samples = sample_1d(g, [](double x) { return cplx(std::cos(x), 0.0); });
  const auto modes = dft_modes(g, samples);
  const cplx expected_plus = dft_oracle_1d(samples, 1);
  const cplx expected_minus = dft_oracle_1d(samples, -1);
  CHECK(std::abs(expected_plus - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(modes.at({1}) - expected_plus) < 1e-13);
  CHECK(std::abs(modes.at({-1}) - expected_minus) < 1e-13);
}

TEST_CASE("dft round trip and Parseval on random samples") {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, 16);
    Rng rng(7 + static_cast<std::uint64_t>(dim));
    std::vector<cplx> s(g.total_nodes());
    for (auto& v : s) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));

    const auto coeffs = dft_forward(g, s);
    const auto back = dft_inverse(g, coeffs);
    double sample_power = 0.0, coeff_power = 0.0, roundtrip = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      roundtrip = std::max(roundtrip, std::abs(back[j] - s[j]));
      sample_power += std::norm(s[j]);
      coeff_power += std::norm(coeffs[j]);
    }
    CHECK(roundtrip < 1e-12);
    CHECK(std::fabs(sample_power / static_cast<double>(g.total_nodes()) - coeff_power) < 1e-12);

    // reconstruction through the mode map
    const auto back2 = dft_reconstruct(g, dft_modes(g, s));
    for (std::size_t j = 0; j < s.size(); ++j) CHECK(std::abs(back2[j] - s[j]) < 1e-12);

    // parallel and serial paths agree
    const auto serial = dft_forward_serial(g, s);
    for (std::size_t j = 0; j < s.size(); ++j) CHECK(std::abs(coeffs[j] - serial[j]) == 0.0);
  }
}

TEST_CASE("dft rejects malformed input") {
  const PeriodicGrid g(1, 16);
  CHECK_THROWS_AS(dft_forward(g, std::vector<cplx>(15)), DimensionMismatch);
  CHECK_THROWS_AS(dft_reconstruct(g, {{{1, 2}, cplx(1.0, 0.0)}}), DimensionMismatch);
  CHECK_THROWS_AS(dft_reconstruct(g, {{{9}, cplx(1.0, 0.0)}}), DimensionMismatch);
}

TEST_CASE("central differences") {
  CHECK(std::fabs(central_diff1([](double x) { return std::sin(x); }, 0.0, 1e-3) - 1.0) < 1e-10);
  CHECK(central_diff1([](double) { return 3.5; }, 0.7, 1e-2) == 0.0);
  CHECK(std::fabs(central_diff1([](double x) { return x * x; }, 3.0, 1e-3) - 6.0) < 1e-9);

  // directional form
  const double d = central_diff(
      [](const VecD& x) { return x[0] * x[0] + 2.0 * x[1]; }, {1.0, 0.0}, {1.0, 0.0}, 1e-3);
  CHECK(std::fabs(d - 2.0) < 1e-9);

  CHECK_THROWS_AS(
      central_diff1([](double x) { return x > 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0; },
                    0.0, 1e-3),
      EvaluationError);
}

TEST_CASE("central difference error is fourth order") {
  auto f = [](double x) { return std::exp(std::sin(x)); };
  auto fprime = [](double x) { return std::cos(x) * std::exp(std::sin(x)); };
  const double x0 = 0.3;
  const double e1 = std::fabs(central_diff1(f, x0, 0.1) - fprime(x0));
  const double e2 = std::fabs(central_diff1(f, x0, 0.05) - fprime(x0));
  const double ratio = e1 / e2;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("rk4 against closed forms") {
  const auto growth = rk4_solve([](double, double y) { return y; }, 0.0, 1.0, 1.0, 1e-3);
  CHECK(std::fabs(growth.values.back() - std::exp(1.0)) < 1e-10);
  CHECK(growth.times.back() == doctest::Approx(1.0).epsilon(1e-15));

  const auto still = rk4_solve([](double, double) { return 0.0; }, 0.0, 2.5, 3.0, 0.1);
  for (double v : still.values) CHECK(v == 2.5);

  // t alpha' + alpha = t through the origin-regular branch: alpha = t/2
  const auto alpha =
      rk4_solve([](double t, double y) { return (t - y) / t; }, 0.1, 0.05, 1.9, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    worst = std::max(worst, std::fabs(alpha.values[i] - 0.5 * alpha.times[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("rk4 error is fourth order") {
  auto rhs = [](double t, double y) { return std::cos(t) * y; };  // y = exp(sin t)
  const double exact = std::exp(std::sin(1.5));
  const double e1 = std::fabs(rk4_solve(rhs, 0.0, 1.0, 1.5, 0.05).values.back() - exact);
  const double e2 = std::fabs(rk4_solve(rhs, 0.0, 1.0, 1.5, 0.025).values.back() - exact);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("rk4 reports divergence with the last good time") {
  auto rhs = [](double t, double) {
    return t < 0.5 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
  };
  try {
    rk4_solve(rhs, 0.0, 0.0, 1.0, 0.01);
    FAIL("expected IntegrationDiverged");
  } catch (const IntegrationDiverged& e) {
    CHECK(e.last_good_t() >= 0.0);
    CHECK(e.last_good_t() <= 0.51);
  }
  CHECK_THROWS_AS(rk4_solve([](double, double y) { return y; }, 1.0, 1.0, 0.5, 0.1),
                  InvalidArgument);
}

TEST_CASE("log-log slope fit") {
  VecD xs{0.1, 0.05, 0.025}, ys;
  for (double x : xs) ys.push_back(3.0 * x * x);
  CHECK(std::fabs(fit_loglog_slope(xs, ys) - 2.0) < 1e-12);
  CHECK_THROWS_AS(fit_loglog_slope({1.0}, {1.0}), InvalidArgument);
}
