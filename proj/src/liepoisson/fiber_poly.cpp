#include "qlab/liepoisson/fiber_poly.hpp"

#include <cmath>

namespace qlab::liepoisson {

UPoly UPoly::constant(int nvars, double c) {
  UPoly p(nvars);
  p.add_term(std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

UPoly UPoly::variable(int nvars, int k) {
  if (k < 0 || k >= nvars) throw InvalidArgument("UPoly::variable: index out of range");
  UPoly p(nvars);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(k)] = 1;
  p.add_term(std::move(e), 1.0);
  return p;
}

void UPoly::add_term(std::vector<int> exponents, double c) {
  if (static_cast<int>(exponents.size()) != nvars_)
    throw DimensionMismatch("UPoly: exponent vector length != nvars");
  auto it = terms_.find(exponents);
  const double v = (it == terms_.end() ? 0.0 : it->second) + c;
  if (v == 0.0) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(std::move(exponents), v);
  } else {
    it->second = v;
  }
}

UPoly UPoly::operator+(const UPoly& o) const {
  if (o.nvars_ != nvars_) throw DimensionMismatch("UPoly: nvars mismatch in +");
  UPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (o.nvars_ != nvars_) throw DimensionMismatch("UPoly: nvars mismatch in *");
  UPoly r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(std::move(e), ca * cb);
    }
  return r;
}

UPoly UPoly::operator*(double s) const {
  UPoly r(nvars_);
  if (s == 0.0) return r;
  for (const auto& [e, c] : terms_) r.add_term(e, s * c);
  return r;
}

UPoly UPoly::du(int h) const {
  if (h < 0 || h >= nvars_) throw InvalidArgument("UPoly::du: index out of range");
  UPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    const int p = e[static_cast<std::size_t>(h)];
    if (p == 0) continue;
    std::vector<int> f = e;
    f[static_cast<std::size_t>(h)] = p - 1;
    r.add_term(std::move(f), c * p);
  }
  return r;
}

double UPoly::eval(const VecD& u) const {
  if (static_cast<int>(u.size()) != nvars_)
    throw DimensionMismatch("UPoly::eval: point has wrong dimension");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) t *= u[i];
    s += t;
  }
  return s;
}

void FiberPolynomial::set_term(std::vector<int> alpha, Coefficient c) {
  if (static_cast<int>(alpha.size()) != fiber_dim_)
    throw DimensionMismatch("FiberPolynomial: multi-index length != fiber_dim");
  for (int e : alpha)
    if (e < 0) throw InvalidArgument("FiberPolynomial: negative exponent");
  if (const auto* p = std::get_if<UPoly>(&c); p && p->nvars() != base_dim_)
    throw DimensionMismatch("FiberPolynomial: coefficient polynomial has wrong base_dim");
  terms_[std::move(alpha)] = std::move(c);
}

FiberPolynomial FiberPolynomial::coordinate(int base_dim, int fiber_dim, int k) {
  if (k < 0 || k >= fiber_dim) throw InvalidArgument("FiberPolynomial::coordinate: bad index");
  FiberPolynomial f(base_dim, fiber_dim);
  std::vector<int> alpha(static_cast<std::size_t>(fiber_dim), 0);
  alpha[static_cast<std::size_t>(k)] = 1;
  f.set_term(std::move(alpha), 1.0);
  return f;
}

bool FiberPolynomial::symbolic() const {
  for (const auto& [alpha, c] : terms_)
    if (std::holds_alternative<CoeffFn>(c)) return false;
  return true;
}

FiberPoly<UPoly> FiberPolynomial::to_symbolic() const {
  if (!symbolic())
    throw InvalidArgument("FiberPolynomial: opaque coefficients have no symbolic form");
  const UPolyRing ring{base_dim_};
  FiberPoly<UPoly> out(fiber_dim_);
  for (const auto& [alpha, c] : terms_) {
    if (const auto* k = std::get_if<double>(&c))
      fp_add_term(out, alpha, UPoly::constant(base_dim_, *k), ring);
    else
      fp_add_term(out, alpha, std::get<UPoly>(c), ring);
  }
  return out;
}

double FiberPolynomial::eval(const VecD& u, const VecD& Z) const {
  if (static_cast<int>(u.size()) != base_dim_ || static_cast<int>(Z.size()) != fiber_dim_)
    throw DimensionMismatch("FiberPolynomial::eval: point has wrong dimensions");
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double zpow = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int e = 0; e < alpha[i]; ++e) zpow *= Z[i];
    double a;
    if (const auto* k = std::get_if<double>(&c))
      a = *k;
    else if (const auto* p = std::get_if<UPoly>(&c))
      a = p->eval(u);
    else
      a = std::get<CoeffFn>(c)(u);
    if (!std::isfinite(a)) throw EvaluationError("FiberPolynomial: non-finite coefficient value");
    s += a * zpow;
  }
  return s;
}

FiberPolynomial from_symbolic(const FiberPoly<UPoly>& p, int base_dim) {
  FiberPolynomial out(base_dim, p.fiber_dim);
  for (const auto& [alpha, c] : p.terms) out.set_term(alpha, c);
  return out;
}

FiberPolynomial fiber_multiply(const FiberPolynomial& a, const FiberPolynomial& b) {
  if (a.base_dim() != b.base_dim() || a.fiber_dim() != b.fiber_dim())
    throw DimensionMismatch("fiber_multiply: dimension mismatch");
  const UPolyRing ring{a.base_dim()};
  return from_symbolic(fp_mul(a.to_symbolic(), b.to_symbolic(), ring), a.base_dim());
}

}  // namespace qlab::liepoisson
