#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab::liepoisson {

// Flat index of B^j_{kh} inside the n^3 structure tensor.
inline std::size_t b_index(int n, int j, int k, int h) {
  return (static_cast<std::size_t>(j) * n + static_cast<std::size_t>(k)) * n +
         static_cast<std::size_t>(h);
}

// Flat index of rho_{hk} (h-th base row, k-th fiber column) in the m x n anchor.
inline std::size_t rho_index(int n, int h, int k) {
  return static_cast<std::size_t>(h) * n + static_cast<std::size_t>(k);
}

// Local structure data of a Lie algebroid over a chart: the bilinear part
// B^j_{kh}(u) of the groupoid product and the anchor rho_{hk}(u). Charts over
// a point (base_dim = 0) carry an empty anchor and recover duals of Lie
// algebras.
struct AlgebroidChart {
  int base_dim = 0;
  int fiber_dim = 1;
  std::function<std::vector<double>(const VecD&)> B;    // n^3, [j][k][h]
  std::function<std::vector<double>(const VecD&)> rho;  // m*n, [h][k]
  bool constant = false;
  std::vector<double> B_const;
  std::vector<double> rho_const;

  // evaluated structure tensors, shape- and finiteness-checked
  std::vector<double> B_at(const VecD& u) const;
  std::vector<double> rho_at(const VecD& u) const;

  static AlgebroidChart make_constant(int base_dim, int fiber_dim, std::vector<double> B,
                                      std::vector<double> rho);
  static AlgebroidChart abelian(int base_dim, int fiber_dim);
  // B^3_{12} = B^1_{23} = B^2_{31} = 1, everything else zero
  static AlgebroidChart so3();
  // so3 with an extra B^1_{12} = eps, which breaks the Jacobi identity
  static AlgebroidChart so3_jacobi_breaking(double eps);
  // base_dim = fiber_dim = n, B = 0, anchor = identity
  static AlgebroidChart tangent(int n);

  // Constant chart from a key=value file with keys base_dim, fiber_dim,
  // B (dense bracketed list, n^3 entries, [j][k][h] order) and rho (m*n,
  // row-major). Throws InvalidArgument with line-anchored messages.
  static AlgebroidChart load_file(const std::string& path);
};

}  // namespace qlab::liepoisson
