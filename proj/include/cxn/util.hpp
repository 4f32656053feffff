#ifndef CXN_UTIL_HPP
#define CXN_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace cxn {

/// Small self-contained PRNG (splitmix64). Used everywhere randomness is
/// needed so that results do not depend on the standard library's
/// distribution implementations: identical seeds give identical streams on
/// every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). Modulo bias is irrelevant at the scales used
  /// here; determinism is what matters.
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 rng(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return rng.next();
}

/// Seeded in-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Sums a buffer after sorting it by value. The result is a function of the
/// value multiset alone, so any reordering of the inputs (neighbor iteration
/// order, cell relabeling, thread assignment) produces bit-identical output.
inline double invariant_sum(std::span<double> scratch) {
  std::sort(scratch.begin(), scratch.end());
  double total = 0.0;
  for (double v : scratch) total += v;
  return total;
}

}  // namespace cxn

#endif
