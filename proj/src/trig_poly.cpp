#include "qlab/trig_poly.hpp"

#include <algorithm>
#include <cmath>

namespace qlab {

TrigPoly TrigPoly::character(std::vector<int> r, cplx a) {
  TrigPoly p(static_cast<int>(r.size()));
  p.set(std::move(r), a);
  return p;
}

TrigPoly TrigPoly::constant(int dim, cplx value) {
  return character(std::vector<int>(static_cast<std::size_t>(dim), 0), value);
}

TrigPoly TrigPoly::cosine(std::vector<int> k) {
  TrigPoly p(static_cast<int>(k.size()));
  std::vector<int> mk(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) mk[i] = -k[i];
  p.add_to(k, cplx(0.5, 0.0));
  p.add_to(mk, cplx(0.5, 0.0));
  return p;
}

TrigPoly TrigPoly::sine(std::vector<int> k) {
  TrigPoly p(static_cast<int>(k.size()));
  std::vector<int> mk(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) mk[i] = -k[i];
  p.add_to(k, cplx(0.0, -0.5));
  p.add_to(mk, cplx(0.0, 0.5));
  return p;
}

void TrigPoly::check_mode(const std::vector<int>& r) const {
  if (static_cast<int>(r.size()) != dim_)
    throw DimensionMismatch("TrigPoly: mode vector has wrong dimension");
}

cplx TrigPoly::coeff(const std::vector<int>& r) const {
  check_mode(r);
  auto it = modes_.find(r);
  return it == modes_.end() ? cplx(0.0, 0.0) : it->second;
}

void TrigPoly::set(std::vector<int> r, cplx a) {
  check_mode(r);
  if (!is_finite(a)) throw InvalidArgument("TrigPoly: non-finite coefficient");
  if (std::abs(a) < kPrune)
    modes_.erase(r);
  else
    modes_[std::move(r)] = a;
}

void TrigPoly::add_to(const std::vector<int>& r, cplx a) {
  check_mode(r);
  if (!is_finite(a)) throw InvalidArgument("TrigPoly: non-finite coefficient");
  auto it = modes_.find(r);
  cplx v = (it == modes_.end() ? cplx(0.0, 0.0) : it->second) + a;
  if (std::abs(v) < kPrune) {
    if (it != modes_.end()) modes_.erase(it);
  } else if (it == modes_.end()) {
    modes_.emplace(r, v);
  } else {
    it->second = v;
  }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("TrigPoly: dimension mismatch in +");
  for (const auto& [r, a] : o.modes_) add_to(r, a);
  return *this;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  TrigPoly r = *this;
  r += o;
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  TrigPoly r = *this;
  r += o * cplx(-1.0, 0.0);
  return r;
}

TrigPoly TrigPoly::operator*(cplx s) const {
  TrigPoly r(dim_);
  for (const auto& [m, a] : modes_) r.add_to(m, s * a);
  return r;
}

TrigPoly TrigPoly::pointwise_mul(const TrigPoly& o) const {
  if (o.dim_ != dim_) throw DimensionMismatch("TrigPoly: dimension mismatch in product");
  TrigPoly r(dim_);
  for (const auto& [ra, a] : modes_)
    for (const auto& [rb, b] : o.modes_) {
      std::vector<int> m(ra.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ra[i] + rb[i];
      r.add_to(m, a * b);
    }
  return r;
}

TrigPoly TrigPoly::derivative(int axis, double wavenumber_scale) const {
  if (axis < 0 || axis >= dim_) throw InvalidArgument("TrigPoly::derivative: bad axis");
  TrigPoly r(dim_);
  for (const auto& [m, a] : modes_)
    r.add_to(m, a * cplx(0.0, wavenumber_scale * m[static_cast<std::size_t>(axis)]));
  return r;
}

cplx TrigPoly::eval(const VecD& q, double wavenumber_scale) const {
  if (static_cast<int>(q.size()) != dim_)
    throw DimensionMismatch("TrigPoly::eval: point has wrong dimension");
  cplx s(0.0, 0.0);
  for (const auto& [m, a] : modes_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) phase += m[i] * q[i];
    s += a * std::polar(1.0, wavenumber_scale * phase);
  }
  return s;
}

double TrigPoly::max_coeff_abs() const {
  double m = 0.0;
  for (const auto& [r, a] : modes_) m = std::max(m, std::abs(a));
  return m;
}

double TrigPoly::one_norm() const {
  double s = 0.0;
  for (const auto& [r, a] : modes_) s += std::abs(a);
  return s;
}

double TrigPoly::max_coeff_distance(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("TrigPoly: dimension mismatch in distance");
  double m = 0.0;
  for (const auto& [r, c] : a.modes_) m = std::max(m, std::abs(c - b.coeff(r)));
  for (const auto& [r, c] : b.modes_) m = std::max(m, std::abs(a.coeff(r) - c));
  return m;
}

}  // namespace qlab
