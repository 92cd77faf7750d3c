#pragma once

#include <map>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab {

// Finitely supported Fourier series sum_r a_r e^{i<r,q>}, r in Z^n. The basic
// element of the torus function algebra; also used as coefficient ring for
// symbols on a periodic box (where the wavenumber carries a 2*pi/L factor).
// Coefficients with |a_r| below the pruning threshold are never stored, so
// emptiness tests are exact.
class TrigPoly {
 public:
  static constexpr double kPrune = 1e-300;
  using Modes = std::map<std::vector<int>, cplx>;

  explicit TrigPoly(int dim = 0) : dim_(dim) {}

  static TrigPoly character(std::vector<int> r, cplx a = cplx(1.0, 0.0));
  static TrigPoly constant(int dim, cplx value);
  // real building blocks: cos<k,q> and sin<k,q>
  static TrigPoly cosine(std::vector<int> k);
  static TrigPoly sine(std::vector<int> k);

  int dim() const { return dim_; }
  const Modes& modes() const { return modes_; }
  bool is_zero() const { return modes_.empty(); }
  std::size_t support_size() const { return modes_.size(); }

  cplx coeff(const std::vector<int>& r) const;
  void set(std::vector<int> r, cplx a);
  void add_to(const std::vector<int>& r, cplx a);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(cplx s) const;
  friend TrigPoly operator*(cplx s, const TrigPoly& p) { return p * s; }

  // plain pointwise product (coefficient convolution)
  TrigPoly pointwise_mul(const TrigPoly& o) const;

  // d/dq_axis; wavenumber_scale rescales whole-number modes to physical
  // wavenumbers (2*pi/L on a box of period L, 1 on the standard torus)
  TrigPoly derivative(int axis, double wavenumber_scale = 1.0) const;

  cplx eval(const VecD& q, double wavenumber_scale = 1.0) const;

  double max_coeff_abs() const;
  double one_norm() const;
  // largest |a_r - b_r| over the union of supports
  static double max_coeff_distance(const TrigPoly& a, const TrigPoly& b);

 private:
  void check_mode(const std::vector<int>& r) const;

  int dim_;
  Modes modes_;
};

}  // namespace qlab
