// Timing comparison of the OpenMP kernels against their serial references.
// Run: qlab_bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "qlab/nctorus/algebra.hpp"
#include "qlab/numkit/dft.hpp"
#include "qlab/parallel.hpp"
#include "qlab/rng.hpp"
#include "qlab/weylrn/quantise.hpp"

using namespace qlab;

namespace {

double time_of(int repeats, const std::function<void()>& body) {
  body();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) body();
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count() / repeats;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %6.2f ms   parallel %6.2f ms   speedup %.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d\n", max_threads());

  Rng rng(1);

  {
    const numkit::PeriodicGrid grid(1, 256);
    std::vector<cplx> samples(grid.total_nodes());
    for (auto& v : samples) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double serial =
        time_of(repeats, [&] { (void)numkit::dft_forward_serial(grid, samples); });
    const double parallel = time_of(repeats, [&] { (void)numkit::dft_forward(grid, samples); });
    report("dft 1d N=256", serial, parallel);
  }

  {
    const numkit::PeriodicGrid grid(2, 64);
    std::vector<cplx> samples(grid.total_nodes());
    for (auto& v : samples) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double serial =
        time_of(repeats, [&] { (void)numkit::dft_forward_serial(grid, samples); });
    const double parallel = time_of(repeats, [&] { (void)numkit::dft_forward(grid, samples); });
    report("dft 2d N=64", serial, parallel);
  }

  {
    const SkewForm eta = SkewForm::standard_2d(1.0);
    TrigPoly a(2), b(2);
    for (int k = 0; k < 400; ++k) {
      a.add_to({static_cast<int>(rng.uniform_int(-20, 20)),
                static_cast<int>(rng.uniform_int(-20, 20))},
               cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
      b.add_to({static_cast<int>(rng.uniform_int(-20, 20)),
                static_cast<int>(rng.uniform_int(-20, 20))},
               cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
    }
    const double serial = time_of(repeats, [&] { (void)nctorus::star_serial(a, b, eta, 0.1); });
    const double parallel = time_of(repeats, [&] { (void)nctorus::star(a, b, eta, 0.1); });
    report("star ~400x400 modes", serial, parallel);
  }

  {
    const numkit::PeriodicGrid grid(1, 256);
    weylrn::SymbolRn f(1);
    f.add_term({2}, TrigPoly::cosine({1}));
    f.add_term({1}, TrigPoly::sine({2}));
    f.add_term({0}, TrigPoly::cosine({3}));
    const auto op = weylrn::quantise(f, 0.1, grid);
    std::vector<cplx> H(grid.total_nodes());
    for (auto& v : H) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double serial = time_of(repeats, [&] { (void)op.apply_serial(H); });
    const double parallel = time_of(repeats, [&] { (void)op.apply(H); });
    report("operator apply N=256", serial, parallel);
  }

  return 0;
}
