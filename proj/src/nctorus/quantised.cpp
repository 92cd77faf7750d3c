#include "qlab/nctorus/quantised.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab::nctorus {

namespace {

double phase_of(const std::vector<int>& r, const VecD& q) {
  double p = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) p += static_cast<double>(r[i]) * q[i];
  return p;
}

}  // namespace

cplx evaluate_quantised(const std::vector<int>& r, const GroupoidFn& H, double hbar, const VecD& q,
                        const SkewForm& eta) {
  if (static_cast<int>(r.size()) != eta.dim() || r.size() != q.size())
    throw DimensionMismatch("evaluate_quantised: dimension mismatch");
  VecD half_r(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) half_r[i] = 0.5 * static_cast<double>(r[i]);
  const cplx value = H(hbar, eta.apply(half_r), q);
  if (!is_finite(value)) throw EvaluationError("evaluate_quantised: H returned non-finite value");
  return std::polar(1.0, phase_of(r, q)) * value;
}

cplx compose_quantised(const std::vector<int>& r, const std::vector<int>& rp, const GroupoidFn& H,
                       double hbar, const VecD& q, const SkewForm& eta) {
  if (r.size() != rp.size()) throw DimensionMismatch("compose_quantised: mode dimensions differ");
  // Right-translate H by an arrow with fiber coordinate u, then apply the
  // inner quantised character at the translated base point.
  GroupoidFn inner = [&](double h, const VecD& u, const VecD& qq) -> cplx {
    GroupoidFn shifted = [&](double h2, const VecD& v, const VecD& q2) -> cplx {
      return H(h2, vadd(v, u), q2);
    };
    const double inner_phase = phase_of(r, vadd(qq, vscale(h, u)));
    VecD half_r(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) half_r[i] = 0.5 * static_cast<double>(r[i]);
    return std::polar(1.0, inner_phase) * shifted(h, eta.apply(half_r), qq);
  };
  return evaluate_quantised(rp, inner, hbar, q, eta);
}

}  // namespace qlab::nctorus
