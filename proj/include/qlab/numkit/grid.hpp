#pragma once

#include <cstddef>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vec.hpp"

namespace qlab::numkit {

// Uniform nodal grid on the dim-torus of period L: nodes x_j = j*L/N.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int points_per_dim, double period = kTwoPi);

  int dim() const { return dim_; }
  int points_per_dim() const { return n_; }
  double period() const { return period_; }
  std::size_t total_nodes() const { return total_; }

  // node coordinates from a flat row-major index
  VecD node(std::size_t flat) const;

  // flat index <-> per-axis bins (row-major, last axis fastest)
  std::vector<int> bins(std::size_t flat) const;
  std::size_t flat(const std::vector<int>& bins) const;

  // bin k in [0,N) to the balanced mode in (-N/2, N/2]
  int mode_from_bin(int k) const { return k <= n_ / 2 ? k : k - n_; }
  int bin_from_mode(int m) const { return m >= 0 ? m : m + n_; }

  std::vector<int> modes_from_bins(const std::vector<int>& bins) const;

  bool operator==(const PeriodicGrid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && period_ == o.period_;
  }

 private:
  int dim_;
  int n_;
  double period_;
  std::size_t total_;
};

struct Tolerances {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double fd_step = 1e-2;

  void validate(double period = kTwoPi) const;
};

// A scalar trajectory t_i -> y_i with strictly increasing times.
struct Trajectory {
  VecD times;
  VecD values;

  Trajectory() = default;
  Trajectory(VecD t, VecD y);

  std::size_t size() const { return times.size(); }
};

}  // namespace qlab::numkit
