// Deterministic random number streams.
//
// The whole toolkit draws randomness from RngStream, a PCG32 generator
// (O'Neill's pcg32, 64-bit state / 32-bit output) wrapped with the three
// deviates the optimizers need.  Everything is pinned so that a (seed,
// config, problem) triple reproduces a run bit for bit on any platform:
//
//   * uniform()  -> one raw 32-bit step, mapped to [0, 1)
//   * normal()   -> Box-Muller cosine branch; consumes exactly two
//                   uniforms per call (the sine mate is discarded so the
//                   per-call draw count is fixed)
//   * cauchy()   -> tan(pi * (u - 1/2)); one uniform
//
// Substreams: split(tag) derives an independent child stream by passing
// (seed, tag) through a SplitMix64 finalizer; split_next() draws one
// 64-bit key from the parent and splits on it.  The optimizers consume
// exactly one key per generation and derive per-phase substreams
// (phase::kNudge / kMutate / kSelect / ...) from it, so two algorithms
// that share a phase consume identical sequences in that phase no matter
// what the other phases draw.  Trial sub-seeds use the same derivation
// from (master seed, trial index).

#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>

namespace epso {

// SplitMix64 finalizer over a seed/tag pair. Bijective in (seed + C*(tag+1)),
// so distinct tags under one seed can never collide.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {
    const std::uint64_t hi = mix_seed(seed, 0x1234u);
    const std::uint64_t lo = mix_seed(seed, 0x5678u);
    inc_ = (lo << 1u) | 1u;
    state_ = 0;
    next_u32();
    state_ += hi;
    next_u32();
  }

  std::uint64_t seed() const { return seed_; }

  // Raw PCG32 step.
  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // High word first, then low word.
  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform double in [0, 1) with 32 bits of resolution.
  double uniform() { return next_u32() * 0x1.0p-32; }

  // Uniform index in [0, n). Fixed-point multiply; the O(n / 2^32)
  // modulo-style bias is irrelevant at population sizes.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(next_u32()) * n) >> 32);
  }

  // Standard normal, Box-Muller cosine branch: two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps log() finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Standard Cauchy (location 0, scale 1): one uniform.
  double cauchy() { return std::tan(std::numbers::pi * (uniform() - 0.5)); }

  // Independent child stream for a fixed tag. Deterministic in (seed, tag).
  RngStream split(std::uint64_t tag) const { return RngStream(mix_seed(seed_, tag)); }

  // Child stream keyed by the next value of this stream (advances this
  // stream by exactly one u64, i.e. two raw draws).
  RngStream split_next() { return RngStream(mix_seed(seed_, next_u64())); }

 private:
  std::uint64_t seed_;
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

// Anything that can stand in for RngStream in the low-level operators;
// tests use scripted fakes to pin down single draws.
template <typename R>
concept RandomSource = requires(R r, std::size_t n) {
  { r.uniform() } -> std::convertible_to<double>;
  { r.normal() } -> std::convertible_to<double>;
  { r.cauchy() } -> std::convertible_to<double>;
  { r.uniform_index(n) } -> std::convertible_to<std::size_t>;
};

// Per-generation phase tags. Each generation-level operator draws one key
// via split_next() and derives its phase substreams from that key, so the
// phases are independent and shared phases line up across algorithms.
namespace phase {
inline constexpr std::uint64_t kNudge = 0;     // hybrid swarm move, Eq-(4)-style uniforms
inline constexpr std::uint64_t kMutate = 1;    // strategy update + mutation deviates
inline constexpr std::uint64_t kSelect = 2;    // tournament opponent picks
inline constexpr std::uint64_t kVelocity = 3;  // PSO velocity uniforms
inline constexpr std::uint64_t kCross = 4;     // GA crossover decisions
inline constexpr std::uint64_t kBitMutate = 5; // GA per-bit mutation
inline constexpr std::uint64_t kRestart = 6;   // micro-GA diversity restart
}  // namespace phase

}  // namespace epso
