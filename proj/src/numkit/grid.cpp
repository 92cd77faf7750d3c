#include "qlab/numkit/grid.hpp"

#include <string>

namespace qlab::numkit {

PeriodicGrid::PeriodicGrid(int dim, int points_per_dim, double period)
    : dim_(dim), n_(points_per_dim), period_(period) {
  if (dim < 1) throw InvalidArgument("PeriodicGrid: dim must be >= 1");
  if (n_ < 4 || n_ % 2 != 0)
    throw InvalidArgument("PeriodicGrid: points_per_dim must be even and >= 4, got " +
                          std::to_string(n_));
  if (!(period > 0.0)) throw InvalidArgument("PeriodicGrid: period must be positive");
  total_ = 1;
  for (int d = 0; d < dim_; ++d) {
    total_ *= static_cast<std::size_t>(n_);
    if (total_ > (std::size_t{1} << 26))
      throw InvalidArgument("PeriodicGrid: too many nodes");
  }
}

VecD PeriodicGrid::node(std::size_t flat) const {
  const auto b = bins(flat);
  VecD x(dim_);
  for (int d = 0; d < dim_; ++d) x[d] = period_ * static_cast<double>(b[d]) / n_;
  return x;
}

std::vector<int> PeriodicGrid::bins(std::size_t flat) const {
  std::vector<int> b(dim_);
  for (int d = dim_ - 1; d >= 0; --d) {
    b[d] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return b;
}

std::size_t PeriodicGrid::flat(const std::vector<int>& bins) const {
  if (static_cast<int>(bins.size()) != dim_)
    throw DimensionMismatch("PeriodicGrid::flat: bin count != dim");
  std::size_t f = 0;
  for (int d = 0; d < dim_; ++d) f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(bins[d]);
  return f;
}

std::vector<int> PeriodicGrid::modes_from_bins(const std::vector<int>& bins) const {
  std::vector<int> m(bins.size());
  for (std::size_t d = 0; d < bins.size(); ++d) m[d] = mode_from_bin(bins[d]);
  return m;
}

void Tolerances::validate(double period) const {
  if (!(abs_tol >= 0.0 && abs_tol < 1.0)) throw InvalidArgument("Tolerances: abs_tol out of [0,1)");
  if (!(rel_tol >= 0.0 && rel_tol < 1.0)) throw InvalidArgument("Tolerances: rel_tol out of [0,1)");
  if (!(fd_step > 0.0)) throw InvalidArgument("Tolerances: fd_step must be positive");
  if (!(fd_step < period / 10.0)) throw InvalidArgument("Tolerances: fd_step too large for period");
}

Trajectory::Trajectory(VecD t, VecD y) : times(std::move(t)), values(std::move(y)) {
  if (times.size() != values.size())
    throw DimensionMismatch("Trajectory: times and values differ in length");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw InvalidArgument("Trajectory: times must be strictly increasing");
}

}  // namespace qlab::numkit
