#pragma once

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/trig_poly.hpp"
#include "qlab/vec.hpp"

namespace qlab::liepoisson {

// Real polynomial in the base variables u_1..u_m.
class UPoly {
 public:
  explicit UPoly(int nvars = 0) : nvars_(nvars) {}

  static UPoly constant(int nvars, double c);
  static UPoly variable(int nvars, int k);

  int nvars() const { return nvars_; }
  const std::map<std::vector<int>, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::vector<int> exponents, double c);

  UPoly operator+(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(double s) const;

  // d/du_h
  UPoly du(int h) const;

  double eval(const VecD& u) const;

 private:
  int nvars_;
  std::map<std::vector<int>, double> terms_;
};

// Coefficient rings for symbolic fiber polynomials. A ring instance carries
// the base dimension and supplies the operations the bracket formula needs.

struct UPolyRing {
  using Elem = UPoly;
  using Scalar = double;
  int base_dim = 0;

  Elem zero() const { return UPoly(base_dim); }
  Elem one() const { return UPoly::constant(base_dim, 1.0); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem scale(const Elem& a, double s) const { return a * s; }
  Elem du(const Elem& a, int h) const { return a.du(h); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Scalar eval(const Elem& a, const VecD& u) const { return a.eval(u); }
};

// Trigonometric-polynomial coefficients on a periodic box; wavenumber_scale
// is 2*pi/L so that mode r differentiates to i*r*(2*pi/L).
struct TrigCoeffRing {
  using Elem = TrigPoly;
  using Scalar = cplx;
  int base_dim = 0;
  double wavenumber_scale = 1.0;

  Elem zero() const { return TrigPoly(base_dim); }
  Elem one() const { return TrigPoly::constant(base_dim, cplx(1.0, 0.0)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem mul(const Elem& a, const Elem& b) const { return a.pointwise_mul(b); }
  Elem scale(const Elem& a, double s) const { return a * cplx(s, 0.0); }
  Elem du(const Elem& a, int h) const { return a.derivative(h, wavenumber_scale); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Scalar eval(const Elem& a, const VecD& u) const { return a.eval(u, wavenumber_scale); }
};

// Polynomial in the fiber variables Z^alpha with coefficients in a ring.
template <class Elem>
struct FiberPoly {
  int fiber_dim = 0;
  std::map<std::vector<int>, Elem> terms;  // fiber exponent alpha -> coefficient

  explicit FiberPoly(int n = 0) : fiber_dim(n) {}
};

template <class Ring>
void fp_add_term(FiberPoly<typename Ring::Elem>& p, std::vector<int> alpha,
                 typename Ring::Elem c, const Ring& ring) {
  if (static_cast<int>(alpha.size()) != p.fiber_dim)
    throw DimensionMismatch("FiberPoly: multi-index length != fiber_dim");
  auto it = p.terms.find(alpha);
  if (it == p.terms.end()) {
    if (!ring.is_zero(c)) p.terms.emplace(std::move(alpha), std::move(c));
  } else {
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) p.terms.erase(it);
  }
}

template <class Ring>
FiberPoly<typename Ring::Elem> fp_add(const FiberPoly<typename Ring::Elem>& a,
                                      const FiberPoly<typename Ring::Elem>& b, const Ring& ring) {
  FiberPoly<typename Ring::Elem> r = a;
  for (const auto& [alpha, c] : b.terms) fp_add_term(r, alpha, c, ring);
  return r;
}

template <class Ring>
FiberPoly<typename Ring::Elem> fp_scale(const FiberPoly<typename Ring::Elem>& a, double s,
                                        const Ring& ring) {
  FiberPoly<typename Ring::Elem> r(a.fiber_dim);
  for (const auto& [alpha, c] : a.terms) fp_add_term(r, alpha, ring.scale(c, s), ring);
  return r;
}

// d/dZ_k
template <class Ring>
FiberPoly<typename Ring::Elem> fp_dZ(const FiberPoly<typename Ring::Elem>& a, int k,
                                     const Ring& ring) {
  FiberPoly<typename Ring::Elem> r(a.fiber_dim);
  for (const auto& [alpha, c] : a.terms) {
    const int e = alpha[static_cast<std::size_t>(k)];
    if (e == 0) continue;
    std::vector<int> beta = alpha;
    beta[static_cast<std::size_t>(k)] = e - 1;
    fp_add_term(r, std::move(beta), ring.scale(c, static_cast<double>(e)), ring);
  }
  return r;
}

// coefficient-wise d/du_h
template <class Ring>
FiberPoly<typename Ring::Elem> fp_du(const FiberPoly<typename Ring::Elem>& a, int h,
                                     const Ring& ring) {
  FiberPoly<typename Ring::Elem> r(a.fiber_dim);
  for (const auto& [alpha, c] : a.terms) {
    auto d = ring.du(c, h);
    if (!ring.is_zero(d)) fp_add_term(r, alpha, std::move(d), ring);
  }
  return r;
}

// multiply by the fiber coordinate Z_j
template <class Ring>
FiberPoly<typename Ring::Elem> fp_mul_Z(const FiberPoly<typename Ring::Elem>& a, int j,
                                        const Ring& ring) {
  FiberPoly<typename Ring::Elem> r(a.fiber_dim);
  for (const auto& [alpha, c] : a.terms) {
    std::vector<int> beta = alpha;
    beta[static_cast<std::size_t>(j)] += 1;
    fp_add_term(r, std::move(beta), c, ring);
  }
  return r;
}

template <class Ring>
FiberPoly<typename Ring::Elem> fp_mul(const FiberPoly<typename Ring::Elem>& a,
                                      const FiberPoly<typename Ring::Elem>& b, const Ring& ring) {
  FiberPoly<typename Ring::Elem> r(a.fiber_dim);
  for (const auto& [aa, ca] : a.terms)
    for (const auto& [ab, cb] : b.terms) {
      std::vector<int> alpha(aa.size());
      for (std::size_t i = 0; i < aa.size(); ++i) alpha[i] = aa[i] + ab[i];
      fp_add_term(r, std::move(alpha), ring.mul(ca, cb), ring);
    }
  return r;
}

template <class Ring>
typename Ring::Scalar fp_eval(const FiberPoly<typename Ring::Elem>& a, const VecD& u,
                              const VecD& Z, const Ring& ring) {
  typename Ring::Scalar s{};
  for (const auto& [alpha, c] : a.terms) {
    double zpow = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int e = 0; e < alpha[i]; ++e) zpow *= Z[i];
    s += ring.eval(c, u) * zpow;
  }
  return s;
}

// ---------------------------------------------------------------------------
// User-facing fiber polynomial: finitely many terms alpha -> a_alpha(u) with
// each coefficient a constant, a polynomial in u, or an opaque callable. Only
// the first two support the exact-derivative path.
class FiberPolynomial {
 public:
  using CoeffFn = std::function<double(const VecD&)>;
  using Coefficient = std::variant<double, UPoly, CoeffFn>;

  FiberPolynomial(int base_dim, int fiber_dim) : base_dim_(base_dim), fiber_dim_(fiber_dim) {
    if (base_dim < 0 || fiber_dim < 1)
      throw InvalidArgument("FiberPolynomial: need base_dim >= 0 and fiber_dim >= 1");
  }

  int base_dim() const { return base_dim_; }
  int fiber_dim() const { return fiber_dim_; }
  const std::map<std::vector<int>, Coefficient>& terms() const { return terms_; }

  void set_term(std::vector<int> alpha, Coefficient c);

  // Z_k as a fiber polynomial
  static FiberPolynomial coordinate(int base_dim, int fiber_dim, int k);

  // true when every coefficient is a constant or a UPoly
  bool symbolic() const;

  FiberPoly<UPoly> to_symbolic() const;

  double eval(const VecD& u, const VecD& Z) const;

 private:
  int base_dim_;
  int fiber_dim_;
  std::map<std::vector<int>, Coefficient> terms_;
};

FiberPolynomial from_symbolic(const FiberPoly<UPoly>& p, int base_dim);

// product of two symbolic fiber polynomials
FiberPolynomial fiber_multiply(const FiberPolynomial& a, const FiberPolynomial& b);

}  // namespace qlab::liepoisson
