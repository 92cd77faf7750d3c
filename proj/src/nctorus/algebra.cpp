#include "qlab/nctorus/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/numkit/finite_diff.hpp"
#include "qlab/parallel.hpp"

namespace qlab::nctorus {

namespace {

void check_dims(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta) {
  if (a.dim() != b.dim() || a.dim() != eta.dim())
    throw DimensionMismatch("nctorus: operand dimensions disagree");
}

std::vector<int> mode_sum(const std::vector<int>& r, const std::vector<int>& s) {
  std::vector<int> m(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) m[i] = r[i] + s[i];
  return m;
}

}  // namespace

TrigPoly star(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar) {
  check_dims(a, b, eta);
  // Fixed-size blocks of a's support convolve against b independently; the
  // partial results merge in block order. The block decomposition does not
  // depend on the thread count, so neither does the result.
  constexpr std::size_t kBlock = 64;
  if (a.support_size() <= kBlock) return star_serial(a, b, eta, hbar);

  std::vector<const std::pair<const std::vector<int>, cplx>*> entries;
  entries.reserve(a.support_size());
  for (const auto& entry : a.modes()) entries.push_back(&entry);

  const std::size_t blocks = (entries.size() + kBlock - 1) / kBlock;
  std::vector<TrigPoly> partial(blocks, TrigPoly(a.dim()));
  parallel_for(static_cast<std::int64_t>(blocks), [&](std::int64_t bi) {
    TrigPoly& local = partial[static_cast<std::size_t>(bi)];
    const std::size_t begin = static_cast<std::size_t>(bi) * kBlock;
    const std::size_t end = std::min(begin + kBlock, entries.size());
    for (std::size_t e = begin; e < end; ++e) {
      const auto& [r, ca] = *entries[e];
      for (const auto& [s, cb] : b.modes())
        local.add_to(mode_sum(r, s), ca * cb * std::polar(1.0, 0.5 * hbar * eta.pairing(r, s)));
    }
  });

  TrigPoly out(a.dim());
  for (const TrigPoly& p : partial) out += p;
  return out;
}

TrigPoly star_serial(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta, double hbar) {
  check_dims(a, b, eta);
  TrigPoly out(a.dim());
  for (const auto& [r, ca] : a.modes())
    for (const auto& [s, cb] : b.modes())
      out.add_to(mode_sum(r, s), ca * cb * std::polar(1.0, 0.5 * hbar * eta.pairing(r, s)));
  return out;
}

TrigPoly involution(const TrigPoly& a) {
  TrigPoly out(a.dim());
  for (const auto& [r, c] : a.modes()) {
    std::vector<int> mr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) mr[i] = -r[i];
    out.add_to(mr, std::conj(c));
  }
  return out;
}

TrigPoly poisson_bracket_const(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta) {
  check_dims(a, b, eta);
  const double sp = static_cast<double>(orientation().bracket_sign);
  TrigPoly out(a.dim());
  for (const auto& [r, ca] : a.modes())
    for (const auto& [s, cb] : b.modes())
      out.add_to(mode_sum(r, s), ca * cb * (sp * eta.pairing(r, s)));
  return out;
}

double semiclassical_error(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta,
                           double hbar) {
  if (hbar == 0.0)
    throw InvalidArgument("semiclassical_error: hbar must be nonzero");
  const cplx inv_ihbar(0.0, -1.0 / hbar);
  const TrigPoly comm = (star(a, b, eta, hbar) - star(b, a, eta, hbar)) * inv_ihbar;
  const double sigma = static_cast<double>(orientation().commutator_sign);
  const TrigPoly target = poisson_bracket_const(a, b, eta) * cplx(sigma, 0.0);
  return TrigPoly::max_coeff_distance(comm, target);
}

double semiclassical_bound(const TrigPoly& a, const TrigPoly& b, const SkewForm& eta,
                           double hbar) {
  double s = 0.0;
  for (const auto& [r, ca] : a.modes())
    for (const auto& [rb, cb] : b.modes()) {
      const double c = eta.pairing(r, rb);
      s += std::abs(ca) * std::abs(cb) * std::fabs(c * c * c);
    }
  return s * hbar * hbar / 24.0;
}

const Orientation& orientation() {
  static const Orientation o = [] {
    const SkewForm eta = SkewForm::standard_2d(1.0);
    const std::vector<int> r{1, 0}, s{0, 1};
    const double c = eta.pairing(r, s);  // = 1

    // finite-difference Poisson bracket of the characters at a generic point
    const VecD q0{0.5, 0.9};
    auto character = [](const std::vector<int>& k, const VecD& q) {
      return std::polar(1.0, static_cast<double>(k[0]) * q[0] + static_cast<double>(k[1]) * q[1]);
    };
    auto partial = [&](const std::vector<int>& k, int axis) {
      return numkit::central_diff1(
          [&](double t) {
            VecD q = q0;
            q[static_cast<std::size_t>(axis)] += t;
            return character(k, q);
          },
          0.0, 1e-3);
    };
    cplx fd_bracket(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) fd_bracket += eta.entry(i, j) * partial(r, i) * partial(s, j);
    const cplx g_rs = character({1, 1}, q0);
    const int sigma_p = static_cast<int>(std::lround((fd_bracket / (g_rs * c)).real()));

    // hbar->0 limit of the rescaled star commutator on the same pair
    const double h = 1e-4;
    const TrigPoly gr = TrigPoly::character(r);
    const TrigPoly gs = TrigPoly::character(s);
    const TrigPoly comm =
        (star_serial(gr, gs, eta, h) - star_serial(gs, gr, eta, h)) * cplx(0.0, -1.0 / h);
    const double limit = comm.coeff({1, 1}).real();
    const int sigma = static_cast<int>(std::lround(limit / (sigma_p * c)));

    if ((sigma_p != 1 && sigma_p != -1) || (sigma != 1 && sigma != -1))
      throw EvaluationError("orientation: oracle failed to resolve the signs");
    return Orientation{sigma, sigma_p};
  }();
  return o;
}

}  // namespace qlab::nctorus
