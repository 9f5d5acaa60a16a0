// Timing comparison of the two theta-series implementations: the serial
// double loop over sphere vector lists (the reference the tests trust) and
// the orbit-collapsed orthogonal-section kernel (OpenMP over tasks). Both
// produce identical expansions; that is asserted before timing is reported.

#include <chrono>
#include <cstdio>
#include <string>

#include "siegel/generators.hpp"

using namespace siegel;

namespace {

double seconds_of(const std::function<FourierExpansion()>& body, FourierExpansion* out) {
  auto t0 = std::chrono::steady_clock::now();
  *out = body();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void bench(const std::string& name, const EvenLattice& l, Int bound) {
  FourierExpansion ref, fast;
  double t_ref = seconds_of([&] { return theta_series_reference(l, bound); }, &ref);
  double t_fast = seconds_of([&] { return theta_series(l, bound); }, &fast);
  bool equal = ref.coeffs == fast.coeffs && ref.degenerate == fast.degenerate;
  std::printf("%-14s B=%-2lld reference %8.3fs   kernel %8.3fs   speedup %6.1fx   %s\n", name.c_str(),
              static_cast<long long>(bound), t_ref, t_fast, t_ref / t_fast,
              equal ? "identical" : "MISMATCH");
  std::fflush(stdout);
}

}  // namespace

int main() {
  std::printf("theta series: serial reference vs section kernel\n");
  EvenLattice e8 = e8_lattice();
  EvenLattice i2 = scaled_identity_lattice(8, 2);
  bench("rank-8 (e8)", e8, 2);
  bench("rank-8 (e8)", e8, 3);
  bench("rank-8 (e8)", e8, 4);
  bench("level-4 (2i8)", i2, 3);
  bench("level-4 (2i8)", i2, 4);
  return 0;
}
