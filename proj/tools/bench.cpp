// Non-gating benchmark: wall time of the subspace construction and inversion
// against the subspace dimension N on random univariate permutations
// (uniform random bijection tables, interpolated to reduced polynomials).
// The dominant costs are composition and the dependence checks, so the trend
// with N (and p) is what matters, not absolute numbers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "koopinv/koopman.hpp"
#include "koopinv/oracle.hpp"

using namespace koopinv;
using Clock = std::chrono::steady_clock;

namespace {

PolyMap<Fp> random_permutation(const Field& field, std::mt19937_64& rng) {
  const std::uint64_t p = field.p();
  std::vector<std::uint64_t> table(p);
  std::iota(table.begin(), table.end(), 0);
  std::shuffle(table.begin(), table.end(), rng);
  PointSpace space(field, 1);
  std::vector<std::vector<Fp>> outputs;
  outputs.reserve(p);
  for (std::uint64_t x = 0; x < p; ++x) outputs.push_back({Fp(table[x], p)});
  return interpolate(ValueTable{space, std::move(outputs)});
}

}  // namespace

int main() {
  std::mt19937_64 rng(2024);
  std::printf("%6s %6s %8s %12s %12s\n", "p", "N", "samples", "build us", "invert us");
  for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 23ull, 31ull, 41ull}) {
    Field field(p);
    struct Bucket {
      int count = 0;
      double build_us = 0;
      double invert_us = 0;
    };
    std::map<std::size_t, Bucket> buckets;
    for (int rep = 0; rep < 30; ++rep) {
      const PolyMap<Fp> f = random_permutation(field, rng);
      const auto t0 = Clock::now();
      const auto d = build_invariant_subspace(f);
      const auto t1 = Clock::now();
      const auto inv = invert_univariate(d);
      const auto t2 = Clock::now();
      auto& b = buckets[d.dimension()];
      ++b.count;
      b.build_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
      b.invert_us += std::chrono::duration<double, std::micro>(t2 - t1).count();
    }
    for (const auto& [n, b] : buckets) {
      std::printf("%6llu %6zu %8d %12.1f %12.1f\n", static_cast<unsigned long long>(p), n,
                  b.count, b.build_us / b.count, b.invert_us / b.count);
    }
  }
  return 0;
}
