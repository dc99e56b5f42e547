// Hybrid EP-PSO: each EP generation is preceded by a swarm-direction move
// of every parent toward the population best and its own personal best,
// followed by the standard self-adaptive mutation and tournament.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "epso/core.hpp"
#include "epso/ep.hpp"
#include "epso/pso.hpp"
#include "epso/rng.hpp"

namespace epso {

struct HybridConfig {
  std::size_t mu = 50;
  std::size_t q = 15;
  MutationKind mutation = MutationKind::Gaussian;
  double c1 = 2.0;  // toward the population best
  double c2 = 2.0;  // toward the member's own best
  Wall wall = Wall::Absorbing;
  // The move invalidates the parent's cached fitness; re-scoring it before
  // the tournament costs mu evaluations per generation. Off for ablation.
  bool reevaluate_nudged = true;
  std::optional<double> tau;
  std::optional<double> tau_prime;
};

// v(j) = c1 R1(0,1) (group_best(j)-x(j)) + c2 R2(0,1) (pbest(j)-x(j));
// x <- x + v, wall-handled. No inertia and no velocity memory: v is built
// fresh from the two attraction terms. Fresh R per component per term,
// R1 before R2. Strategy vector and personal-best record ride along
// untouched; the cached fitness is NOT refreshed here.
template <RandomSource R>
Individual swarm_nudge(Individual ind, const SolutionVector& group_best,
                       double c1, double c2, const Bounds& bounds, Wall wall,
                       R& rng) {
  std::vector<double> v(ind.solution.size());
  for (std::size_t j = 0; j < ind.solution.size(); ++j) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    v[j] = c1 * r1 * (group_best[j] - ind.solution[j]) +
           c2 * r2 * (ind.best_solution[j] - ind.solution[j]);
    ind.solution[j] += v[j];
  }
  apply_wall(ind.solution, v, bounds, wall);
  return ind;
}

// One hybrid generation:
//   1. every parent is nudged toward (group best, personal best), wall-handled;
//   2. nudged parents are re-evaluated when configured (counter +mu);
//   3. each nudged parent yields one offspring via the configured mutation,
//      wall-handled and evaluated (counter +mu);
//   4. q-opponent tournament over the 2mu pool keeps mu survivors.
// The group best is the minimum-fitness member at the start of the
// generation, frozen throughout. Unlike plain PSO, the wall never
// suppresses evaluation here: objectives are total, so an invisible wall
// just means no geometric interference.
//
// Consumes exactly one key from rng, deriving phase::kNudge, phase::kMutate
// and phase::kSelect substreams; the latter two line up with ep_generation
// under identical seeds, which makes the c1=c2=0, no-re-evaluation
// configuration reproduce EP bit for bit.
inline std::vector<Individual> hybrid_generation(std::vector<Individual> pop,
                                                 const Objective& objective,
                                                 const HybridConfig& cfg,
                                                 RngStream& rng,
                                                 EvaluationCounter& counter) {
  const auto p = detail::resolve_ep(cfg.tau, cfg.tau_prime, objective);
  const Bounds& b = objective.bounds();
  RngStream gen = rng.split_next();
  RngStream r_nudge = gen.split(phase::kNudge);
  RngStream r_mut = gen.split(phase::kMutate);
  RngStream r_sel = gen.split(phase::kSelect);

  const SolutionVector group_best = pop[best_index(pop)].solution;

  const std::size_t mu = pop.size();
  std::vector<Individual> pool;
  pool.reserve(2 * mu);
  for (std::size_t i = 0; i < mu; ++i)
    pool.push_back(swarm_nudge(std::move(pop[i]), group_best, cfg.c1, cfg.c2, b,
                               cfg.wall, r_nudge));
  if (cfg.reevaluate_nudged)
    for (std::size_t i = 0; i < mu; ++i) evaluate(pool[i], objective, counter);

  for (std::size_t i = 0; i < mu; ++i) {
    Individual child =
        mutate(pool[i], r_mut, cfg.mutation, p.tau, p.tau_prime, p.floor);
    std::vector<double> zero_v(child.solution.size(), 0.0);
    apply_wall(child.solution, zero_v, b, cfg.wall);
    evaluate(child, objective, counter);
    pool.push_back(std::move(child));
  }
  return tournament_select(pool, cfg.q, mu, r_sel);
}

}  // namespace epso
