#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace royale {

/// Source of uniform draws in [0,1). Library code is templated on this so
/// tests can substitute scripted value sequences for the real stream.
template <class R>
concept UniformSource = requires(R& r) {
  { r.uniform01() } -> std::convertible_to<double>;
};

/// Explicitly seeded deterministic stream. The engine is mt19937_64, whose
/// output sequence is fixed by the standard; doubles are built from the top
/// 53 bits, so the same seed yields the same draws on every platform
/// regardless of the standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  /// r * (hi - lo) + lo; a degenerate interval collapses to the point.
  double uniform(double lo, double hi) { return uniform01() * (hi - lo) + lo; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

/// Stable per-run seed. A run is keyed by (master seed, algorithm name,
/// function name, run index), so adding functions or algorithms to an
/// experiment never disturbs the seeds of unrelated runs.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::string_view algorithm,
                                 std::string_view function,
                                 std::uint32_t run_index) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV offset basis
  h = detail::fnv1a(h, &master_seed, sizeof master_seed);
  h = detail::fnv1a(h, algorithm.data(), algorithm.size());
  h = detail::fnv1a(h, function.data(), function.size());
  h = detail::fnv1a(h, &run_index, sizeof run_index);
  return detail::splitmix64(h);
}

}  // namespace royale
