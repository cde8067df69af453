#ifndef MIPS_RNG_HPP
#define MIPS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace mips {

// Deterministic splittable generator. A (seed, stream) pair names an
// independent sequence; every consumer in this library documents which
// stream it draws from, so identical inputs replay identical draws.
//
// The core step is SplitMix64: the state walks a golden-ratio lattice and
// each output is a finalizing hash of the state. Stream derivation hashes
// (seed, stream) into the starting state.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed + kGolden) ^ mix(stream * kStreamSalt + kGolden))) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform integer in [0, n) via the 128-bit multiply-shift reduction.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired variate is cached, so calls
  // alternately consume two uniforms and zero.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * kPi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stream ids reserved by the library. Solver runs and bucket bin b draw from
// stream b; auxiliary draws use the high constants so they never collide.
namespace streams {
inline constexpr std::uint64_t kSolve = 0;
inline constexpr std::uint64_t kWarmCache = 0x4000000000000000ull;
inline constexpr std::uint64_t kNormProbe = 0x4000000000000001ull;
}  // namespace streams

}  // namespace mips

#endif  // MIPS_RNG_HPP
