#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace clvr {

// Deterministic random source shared by every stochastic component.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. All derived draws (uniform doubles, bounded indices, normals)
// are implemented here rather than with <random> distributions, because
// distribution output is implementation-defined and would break
// reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_open_double() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform index in [0, bound). bound must be nonzero.
  std::size_t next_index(std::size_t bound) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>(
        (static_cast<u128>(engine_()) * static_cast<u128>(bound)) >> 64);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Standard normal via Box-Muller. The second variate of each pair is
  // discarded so the draw count per call is fixed.
  double next_normal() {
    const double u1 = next_open_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Splitmix64-style mix of a base seed with a stream id and an index,
// so per-trial and per-purpose substreams never collide or correlate.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  std::uint64_t z = base;
  z += 0x9e3779b97f4a7c15ULL * (stream + 1);
  z += 0xd1b54a32d192ed03ULL * (index + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Substream ids used with derive_seed across the library.
inline constexpr std::uint64_t kStreamWorkload = 1;
inline constexpr std::uint64_t kStreamOrdering = 2;
inline constexpr std::uint64_t kStreamScenario = 3;

}  // namespace clvr
