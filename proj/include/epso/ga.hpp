// Binary-coded GA and micro-GA baselines: linear bit decoding, binary
// tournaments, uniform crossover, per-bit mutation, single-elite
// replacement, and the micro-GA diversity restart.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "epso/core.hpp"
#include "epso/rng.hpp"

namespace epso {

struct GaConfig {
  std::size_t pop_size = 50;
  double pc = 0.7;   // per-pair crossover probability
  double pm = 0.02;  // per-bit mutation probability
  std::size_t bits_per_param = 16;
  bool elitism = true;
};

struct MicroGaConfig {
  std::size_t members = 6;  // 5 parents + 1 elite
  double pc = 0.9;
  double restart_threshold = 0.20;  // elite-relative bit-difference ratio
  std::size_t bits_per_param = 16;
};

struct GaMember {
  std::vector<std::uint8_t> bits;  // bits_per_param * n, MSB-first per parameter
  std::optional<double> fitness;
};

// Linear decode: all-zeros -> lower bound, all-ones -> upper bound,
// x_j = lo_j + int(bits_j) / (2^B - 1) * (hi_j - lo_j).
inline SolutionVector decode(const std::vector<std::uint8_t>& bits,
                             std::size_t bits_per_param, const Bounds& bounds) {
  const std::size_t n = bounds.size();
  if (bits.size() != bits_per_param * n)
    throw std::invalid_argument("decode: bit length does not match dimension");
  const double denom = static_cast<double>((1ull << bits_per_param) - 1ull);
  SolutionVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < bits_per_param; ++k)
      value = (value << 1) | bits[j * bits_per_param + k];
    x[j] = bounds.lower[j] + static_cast<double>(value) / denom * bounds.span(j);
  }
  return x;
}

// Each bit position independently swaps between the children with
// probability 1/2; the per-position multiset of bits is preserved.
template <RandomSource R>
void uniform_crossover(std::vector<std::uint8_t>& a, std::vector<std::uint8_t>& b,
                       R& rng) {
  if (a.size() != b.size())
    throw std::invalid_argument("uniform_crossover: length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (rng.uniform() < 0.5) std::swap(a[k], b[k]);
}

namespace detail {

template <RandomSource R>
std::size_t binary_tournament(const std::vector<GaMember>& pop, R& rng) {
  const std::size_t a = rng.uniform_index(pop.size());
  const std::size_t b = rng.uniform_index(pop.size());
  return *pop[b].fitness < *pop[a].fitness ? b : a;  // ties keep the first draw
}

template <RandomSource R>
void mutate_bits(std::vector<std::uint8_t>& bits, double pm, R& rng) {
  for (std::uint8_t& bit : bits)
    if (rng.uniform() < pm) bit ^= 1u;
}

template <RandomSource R>
std::vector<std::uint8_t> random_bits(std::size_t len, R& rng) {
  std::vector<std::uint8_t> bits(len);
  for (std::uint8_t& bit : bits) bit = rng.uniform() < 0.5 ? 0 : 1;
  return bits;
}

inline std::size_t elite_index(const std::vector<GaMember>& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (*pop[i].fitness < *pop[best].fitness) best = i;
  return best;
}

inline void evaluate_member(GaMember& m, const Objective& objective,
                            std::size_t bits_per_param, EvaluationCounter& counter) {
  m.fitness = objective.evaluate(decode(m.bits, bits_per_param, objective.bounds()));
  ++counter.count;
}

inline std::size_t hamming(const std::vector<std::uint8_t>& a,
                           const std::vector<std::uint8_t>& b) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k];
  return d;
}

}  // namespace detail

template <RandomSource R>
std::vector<GaMember> ga_init(std::size_t pop_size, const Objective& objective,
                              std::size_t bits_per_param, R& rng,
                              EvaluationCounter& counter) {
  if (pop_size == 0) throw std::invalid_argument("ga_init: pop_size must be >= 1");
  const std::size_t len = bits_per_param * objective.dimension();
  std::vector<GaMember> pop(pop_size);
  for (GaMember& m : pop) {
    m.bits = detail::random_bits(len, rng);
    detail::evaluate_member(m, objective, bits_per_param, counter);
  }
  return pop;
}

// Full replacement with single-elite preservation: the elite passes through
// unevaluated, the remaining slots fill with binary-tournament parents
// recombined by uniform crossover with probability pc (copied otherwise)
// and per-bit mutated. Counter +pop_size-1 with elitism, +pop_size without.
inline std::vector<GaMember> ga_generation(const std::vector<GaMember>& pop,
                                           const Objective& objective,
                                           const GaConfig& cfg, RngStream& rng,
                                           EvaluationCounter& counter) {
  RngStream gen = rng.split_next();
  RngStream r_sel = gen.split(phase::kSelect);
  RngStream r_cross = gen.split(phase::kCross);
  RngStream r_bits = gen.split(phase::kBitMutate);

  std::vector<GaMember> next;
  next.reserve(cfg.pop_size);
  if (cfg.elitism) next.push_back(pop[detail::elite_index(pop)]);
  while (next.size() < cfg.pop_size) {
    std::vector<std::uint8_t> a = pop[detail::binary_tournament(pop, r_sel)].bits;
    std::vector<std::uint8_t> b = pop[detail::binary_tournament(pop, r_sel)].bits;
    if (r_cross.uniform() < cfg.pc) uniform_crossover(a, b, r_cross);
    detail::mutate_bits(a, cfg.pm, r_bits);
    detail::mutate_bits(b, cfg.pm, r_bits);
    GaMember child_a{std::move(a), std::nullopt};
    detail::evaluate_member(child_a, objective, cfg.bits_per_param, counter);
    next.push_back(std::move(child_a));
    if (next.size() < cfg.pop_size) {
      GaMember child_b{std::move(b), std::nullopt};
      detail::evaluate_member(child_b, objective, cfg.bits_per_param, counter);
      next.push_back(std::move(child_b));
    }
  }
  return next;
}

// Micro-GA generation: elite preserved; if every non-elite member differs
// from the elite in fewer than restart_threshold of its bits, the five
// non-elite slots are re-seeded uniformly at random, otherwise they are
// bred by binary tournament + uniform crossover (no mutation). Counter
// +members-1 either way.
inline std::vector<GaMember> micro_ga_generation(const std::vector<GaMember>& pop,
                                                 const Objective& objective,
                                                 const MicroGaConfig& cfg,
                                                 RngStream& rng,
                                                 EvaluationCounter& counter) {
  if (pop.size() != cfg.members)
    throw std::invalid_argument("micro_ga_generation: population size mismatch");
  RngStream gen = rng.split_next();
  RngStream r_sel = gen.split(phase::kSelect);
  RngStream r_cross = gen.split(phase::kCross);
  RngStream r_restart = gen.split(phase::kRestart);

  const std::size_t elite = detail::elite_index(pop);
  const std::vector<std::uint8_t>& elite_bits = pop[elite].bits;
  const std::size_t len = elite_bits.size();

  bool converged = true;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (i == elite) continue;
    if (static_cast<double>(detail::hamming(pop[i].bits, elite_bits)) >=
        cfg.restart_threshold * static_cast<double>(len)) {
      converged = false;
      break;
    }
  }

  std::vector<GaMember> next;
  next.reserve(cfg.members);
  next.push_back(pop[elite]);
  if (converged) {
    while (next.size() < cfg.members)
      next.push_back(GaMember{detail::random_bits(len, r_restart), std::nullopt});
  } else {
    while (next.size() < cfg.members) {
      std::vector<std::uint8_t> a = pop[detail::binary_tournament(pop, r_sel)].bits;
      std::vector<std::uint8_t> b = pop[detail::binary_tournament(pop, r_sel)].bits;
      if (r_cross.uniform() < cfg.pc) uniform_crossover(a, b, r_cross);
      next.push_back(GaMember{std::move(a), std::nullopt});
      if (next.size() < cfg.members)
        next.push_back(GaMember{std::move(b), std::nullopt});
    }
  }
  for (std::size_t i = 1; i < next.size(); ++i)
    detail::evaluate_member(next[i], objective, cfg.bits_per_param, counter);
  return next;
}

}  // namespace epso
