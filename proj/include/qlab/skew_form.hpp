#pragma once

#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab {

// Real skew-symmetric n x n matrix: a constant Poisson bivector on the
// n-torus, or the anchor of the associated algebroid. The constructor
// symmetrises the input through (A - A^T)/2 and rejects it when the
// correction exceeds 1e-12. Degenerate forms are allowed; the orthogonal
// projections onto kernel and image come from an eigendecomposition of
// eta^T eta with a 1e-10 null-space threshold.
class SkewForm {
 public:
  static constexpr double kMaxAsymmetry = 1e-12;
  static constexpr double kNullThreshold = 1e-10;

  SkewForm(int n, std::vector<double> row_major);

  static SkewForm zero(int n);
  // [[0, c], [-c, 0]]
  static SkewForm standard_2d(double c = 1.0);

  int dim() const { return n_; }
  double entry(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<double>& data() const { return a_; }

  VecD apply(const VecD& v) const;
  VecD apply(const std::vector<int>& r) const;

  // <r, eta s>
  double pairing(const std::vector<int>& r, const std::vector<int>& s) const;
  double pairing(const VecD& r, const VecD& s) const;

  VecD project_kernel(const VecD& v) const;
  VecD project_image(const VecD& v) const;

  bool is_zero() const;

  // Largest |A_ij + A_ji| of a candidate matrix, with the offending index
  // pair; used for validation diagnostics before construction.
  static double max_asymmetry(int n, const std::vector<double>& row_major, int* bad_i = nullptr,
                              int* bad_j = nullptr);

 private:
  void ensure_projectors() const;

  int n_;
  std::vector<double> a_;
  // cached orthonormal image basis (columns), built on first projection
  mutable bool projectors_ready_ = false;
  mutable std::vector<double> image_basis_;
  mutable int image_rank_ = 0;
};

namespace detail {
// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major).
// Eigenvectors are returned as columns of `vectors`.
void symmetric_eigen(int n, std::vector<double> a, std::vector<double>& values,
                     std::vector<double>& vectors);
}  // namespace detail

}  // namespace qlab
