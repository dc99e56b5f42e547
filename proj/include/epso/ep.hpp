// Self-adaptive Evolutionary Programming: lognormal strategy update,
// Gaussian/Cauchy mutation, q-opponent tournament selection, and the
// per-generation loop.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epso/core.hpp"
#include "epso/rng.hpp"

namespace epso {

enum class MutationKind { Gaussian, Cauchy };

struct EpConfig {
  std::size_t mu = 50;
  std::size_t q = 15;  // tournament opponents
  MutationKind mutation = MutationKind::Gaussian;
  // Default to the standard self-adaptation constants for the problem
  // dimension when unset (see compute_taus).
  std::optional<double> tau;
  std::optional<double> tau_prime;
};

// (tau, tau_prime) = (1/sqrt(2 sqrt(n)), 1/sqrt(2 n)).
inline std::pair<double, double> compute_taus(std::size_t n) {
  if (n == 0) throw std::invalid_argument("compute_taus: dimension must be >= 1");
  const double nd = static_cast<double>(n);
  return {1.0 / std::sqrt(2.0 * std::sqrt(nd)), 1.0 / std::sqrt(2.0 * nd)};
}

// Lognormal self-adaptation: eta'(j) = eta(j) * exp(tau_prime*Z + tau*Z_j)
// with one shared Z for the whole vector and a fresh Z_j per component,
// floored at eta_floor[j]. Draw order: shared Z first, then Z_0..Z_{n-1}.
template <RandomSource R>
StrategyVector self_adapt_eta(const StrategyVector& etas, R& rng, double tau,
                              double tau_prime, std::span<const double> floor) {
  StrategyVector out(etas.size());
  const double shared = rng.normal();
  for (std::size_t j = 0; j < etas.size(); ++j) {
    const double updated = etas[j] * std::exp(tau_prime * shared + tau * rng.normal());
    out[j] = std::max(updated, floor.empty() ? 0.0 : floor[j]);
  }
  return out;
}

namespace detail {

// Common mutation body: update eta, then perturb each component with the
// updated scale times a deviate. Offspring inherits the parent's
// personal-best record; fitness is left unset.
template <RandomSource R, typename Deviate>
Individual mutate_with(const Individual& parent, R& rng, double tau,
                       double tau_prime, std::span<const double> floor,
                       Deviate draw) {
  Individual child;
  child.strategy = self_adapt_eta(parent.strategy, rng, tau, tau_prime, floor);
  child.solution.resize(parent.solution.size());
  for (std::size_t j = 0; j < parent.solution.size(); ++j)
    child.solution[j] = parent.solution[j] + child.strategy[j] * draw(rng);
  child.best_solution = parent.best_solution;
  child.best_fitness = parent.best_fitness;
  return child;
}

}  // namespace detail

template <RandomSource R>
Individual gaussian_mutate(const Individual& parent, R& rng, double tau,
                           double tau_prime, std::span<const double> floor) {
  return detail::mutate_with(parent, rng, tau, tau_prime, floor,
                             [](R& r) { return r.normal(); });
}

template <RandomSource R>
Individual cauchy_mutate(const Individual& parent, R& rng, double tau,
                         double tau_prime, std::span<const double> floor) {
  return detail::mutate_with(parent, rng, tau, tau_prime, floor,
                             [](R& r) { return r.cauchy(); });
}

template <RandomSource R>
Individual mutate(const Individual& parent, R& rng, MutationKind kind, double tau,
                  double tau_prime, std::span<const double> floor) {
  return kind == MutationKind::Gaussian
             ? gaussian_mutate(parent, rng, tau, tau_prime, floor)
             : cauchy_mutate(parent, rng, tau, tau_prime, floor);
}

// Win counts against q opponents drawn uniformly with replacement (self
// allowed); a win is fitness <= opponent's fitness.
template <RandomSource R>
std::vector<std::size_t> tournament_wins(const std::vector<Individual>& pool,
                                         std::size_t q, R& rng) {
  for (const Individual& ind : pool)
    if (!ind.fitness.has_value())
      throw std::invalid_argument("tournament: pool member lacks a fitness");
  std::vector<std::size_t> wins(pool.size(), 0);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t k = 0; k < q; ++k) {
      const std::size_t opp = rng.uniform_index(pool.size());
      if (*pool[i].fitness <= *pool[opp].fitness) ++wins[i];
    }
  return wins;
}

// Keeps the mu members with the most wins; ties broken by better fitness,
// then by lower pool index. The minimum-fitness member always has the
// maximal win count, so it always survives.
inline std::vector<Individual> select_by_wins(const std::vector<Individual>& pool,
                                              std::span<const std::size_t> wins,
                                              std::size_t mu) {
  if (wins.size() != pool.size())
    throw std::invalid_argument("select_by_wins: wins/pool size mismatch");
  if (mu > pool.size())
    throw std::invalid_argument("select_by_wins: mu exceeds pool size");
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (wins[a] != wins[b]) return wins[a] > wins[b];
    if (*pool[a].fitness != *pool[b].fitness)
      return *pool[a].fitness < *pool[b].fitness;
    return a < b;
  });
  std::vector<Individual> survivors;
  survivors.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) survivors.push_back(pool[order[i]]);
  return survivors;
}

template <RandomSource R>
std::vector<Individual> tournament_select(const std::vector<Individual>& pool,
                                          std::size_t q, std::size_t mu, R& rng) {
  const std::vector<std::size_t> wins = tournament_wins(pool, q, rng);
  return select_by_wins(pool, wins, mu);
}

namespace detail {

struct ResolvedEp {
  double tau;
  double tau_prime;
  std::vector<double> floor;
};

inline ResolvedEp resolve_ep(const std::optional<double>& tau,
                             const std::optional<double>& tau_prime,
                             const Objective& objective) {
  const auto [t, tp] = compute_taus(objective.dimension());
  return {tau.value_or(t), tau_prime.value_or(tp), eta_floor(objective.bounds())};
}

}  // namespace detail

// One EP generation: every parent yields one offspring via the configured
// mutation (no bounds enforcement; out-of-box points take the objective's
// penalty), offspring are evaluated (counter +mu), and a q-opponent
// tournament over the 2mu pool keeps mu survivors. Parents occupy pool
// indices [0, mu), offspring [mu, 2mu).
//
// Consumes exactly one key from rng and derives phase::kMutate and
// phase::kSelect substreams from it.
inline std::vector<Individual> ep_generation(std::vector<Individual> pop,
                                             const Objective& objective,
                                             const EpConfig& cfg, RngStream& rng,
                                             EvaluationCounter& counter) {
  const auto p = detail::resolve_ep(cfg.tau, cfg.tau_prime, objective);
  RngStream gen = rng.split_next();
  RngStream r_mut = gen.split(phase::kMutate);
  RngStream r_sel = gen.split(phase::kSelect);

  const std::size_t mu = pop.size();
  std::vector<Individual> pool = std::move(pop);
  pool.reserve(2 * mu);
  for (std::size_t i = 0; i < mu; ++i) {
    Individual child = mutate(pool[i], r_mut, cfg.mutation, p.tau, p.tau_prime, p.floor);
    evaluate(child, objective, counter);
    pool.push_back(std::move(child));
  }
  return tournament_select(pool, cfg.q, mu, r_sel);
}

}  // namespace epso
