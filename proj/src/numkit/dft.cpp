#include "qlab/numkit/dft.hpp"

#include <cmath>
#include <string>

#include "qlab/parallel.hpp"

namespace qlab::numkit {

namespace {

std::vector<cplx> unit_roots(int n, double sign) {
  std::vector<cplx> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    w[static_cast<std::size_t>(k)] = std::polar(1.0, sign * kTwoPi * k / n);
  return w;
}

// Transform along one axis of the row-major cube. Every output bin of every
// line is an independent sum, so the parallel loop runs over all of them,
// which keeps one-dimensional grids parallel too.
template <bool Parallel>
std::vector<cplx> transform_axis(const PeriodicGrid& grid, const std::vector<cplx>& in, int axis,
                                 const std::vector<cplx>& roots, double scale) {
  const int n = grid.points_per_dim();
  std::size_t stride = 1;
  for (int d = grid.dim() - 1; d > axis; --d) stride *= static_cast<std::size_t>(n);

  const std::size_t total = grid.total_nodes();
  std::vector<cplx> out(total);

  auto bin_body = [&](std::int64_t item) {
    const std::size_t l = static_cast<std::size_t>(item) / static_cast<std::size_t>(n);
    const int k = static_cast<int>(static_cast<std::size_t>(item) % static_cast<std::size_t>(n));
    // base index of line l: positions with axis-coordinate zero
    const std::size_t outer = l / stride;
    const std::size_t inner = l % stride;
    const std::size_t base = outer * stride * static_cast<std::size_t>(n) + inner;
    // compensated summation keeps the round trip near machine precision
    cplx acc(0.0, 0.0), comp(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const cplx term = in[base + static_cast<std::size_t>(j) * stride] *
                            roots[static_cast<std::size_t>((static_cast<long long>(k) * j) % n)] -
                        comp;
      const cplx next = acc + term;
      comp = (next - acc) - term;
      acc = next;
    }
    out[base + static_cast<std::size_t>(k) * stride] = scale * acc;
  };

  if constexpr (Parallel) {
    parallel_for(static_cast<std::int64_t>(total), bin_body);
  } else {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) bin_body(i);
  }
  return out;
}

template <bool Parallel>
std::vector<cplx> run(const PeriodicGrid& grid, const std::vector<cplx>& data, double sign,
                      double per_axis_scale) {
  if (data.size() != grid.total_nodes())
    throw DimensionMismatch("dft: expected " + std::to_string(grid.total_nodes()) +
                            " samples, got " + std::to_string(data.size()));
  const auto roots = unit_roots(grid.points_per_dim(), sign);
  std::vector<cplx> cur = data;
  for (int axis = 0; axis < grid.dim(); ++axis)
    cur = transform_axis<Parallel>(grid, cur, axis, roots, per_axis_scale);
  return cur;
}

}  // namespace

std::vector<cplx> dft_forward(const PeriodicGrid& grid, const std::vector<cplx>& samples) {
  return run<true>(grid, samples, -1.0, 1.0 / grid.points_per_dim());
}

std::vector<cplx> dft_forward_serial(const PeriodicGrid& grid, const std::vector<cplx>& samples) {
  return run<false>(grid, samples, -1.0, 1.0 / grid.points_per_dim());
}

std::vector<cplx> dft_inverse(const PeriodicGrid& grid, const std::vector<cplx>& coeffs) {
  return run<true>(grid, coeffs, +1.0, 1.0);
}

std::vector<cplx> dft_inverse_serial(const PeriodicGrid& grid, const std::vector<cplx>& coeffs) {
  return run<false>(grid, coeffs, +1.0, 1.0);
}

std::map<std::vector<int>, cplx> dft_modes(const PeriodicGrid& grid,
                                           const std::vector<cplx>& samples) {
  const auto dense = dft_forward(grid, samples);
  std::map<std::vector<int>, cplx> out;
  for (std::size_t f = 0; f < dense.size(); ++f)
    out.emplace(grid.modes_from_bins(grid.bins(f)), dense[f]);
  return out;
}

std::vector<cplx> dft_reconstruct(const PeriodicGrid& grid,
                                  const std::map<std::vector<int>, cplx>& modes) {
  std::vector<cplx> dense(grid.total_nodes(), cplx(0.0, 0.0));
  for (const auto& [m, c] : modes) {
    if (static_cast<int>(m.size()) != grid.dim())
      throw DimensionMismatch("dft_reconstruct: mode dimension != grid dimension");
    std::vector<int> bins(m.size());
    for (std::size_t d = 0; d < m.size(); ++d) {
      const int N = grid.points_per_dim();
      if (m[d] <= -N / 2 || m[d] > N / 2)
        throw DimensionMismatch("dft_reconstruct: mode outside the balanced set");
      bins[d] = grid.bin_from_mode(m[d]);
    }
    dense[grid.flat(bins)] += c;
  }
  return dft_inverse(grid, dense);
}

}  // namespace qlab::numkit
