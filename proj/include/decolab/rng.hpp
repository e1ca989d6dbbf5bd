#ifndef DECOLAB_RNG_HPP
#define DECOLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace decolab {

/// Independent random processes inside one realization. Each gets its own stream so that
/// turning one process on or off leaves the draws of the others untouched.
enum class StreamKind : std::uint64_t { Kicks = 1, Kondo = 2 };

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `kind` of realization `index` under master seed `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, StreamKind kind) {
  return splitmix64(splitmix64(splitmix64(seed) ^ index) + static_cast<std::uint64_t>(kind));
}

/// Portable uniform stream. The draw algorithm is fixed here rather than delegated to
/// std::uniform_real_distribution, whose output differs between standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on [0, 1].
  double uniform_closed() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740991.0); }

  /// Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

  /// Uniform on [lo, hi].
  double uniform_closed(double lo, double hi) { return lo + (hi - lo) * uniform_closed(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace decolab

#endif  // DECOLAB_RNG_HPP
