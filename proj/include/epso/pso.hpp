// Particle swarm optimizer: inertia-weight velocity rule, global-best
// topology, and the three boundary-wall policies (absorbing, reflecting,
// invisible).

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "epso/core.hpp"
#include "epso/rng.hpp"

namespace epso {

enum class Wall { Absorbing, Reflecting, Invisible };

struct PsoConfig {
  std::size_t swarm_size = 50;
  double inertia = 0.7;
  double c1 = 1.0;  // cognitive
  double c2 = 2.0;  // social
  Wall wall = Wall::Absorbing;
  // Per-dimension velocity cap; defaults to the box span when unset.
  std::optional<std::vector<double>> v_max;
};

struct Particle {
  SolutionVector position;
  std::vector<double> velocity;
  std::optional<double> fitness;  // last evaluated; stale while out of bounds
  SolutionVector pbest_position;
  double pbest_fitness = 0.0;
  bool in_bounds = true;
};

struct Swarm {
  std::vector<Particle> particles;
  SolutionVector gbest_position;
  double gbest_fitness = 0.0;
};

// Boundary handling for one particle state. Returns whether the resulting
// position may be evaluated.
//   Absorbing:  violating components clamp to the bound, their velocity
//               zeroes out.
//   Reflecting: violating components mirror across the bound (repeatedly,
//               for far excursions) and their velocity flips sign once.
//   Invisible:  state untouched; flags the particle as out of bounds so the
//               caller skips evaluation.
inline bool apply_wall(SolutionVector& position, std::vector<double>& velocity,
                       const Bounds& bounds, Wall wall) {
  bool inside = true;
  for (std::size_t j = 0; j < position.size(); ++j) {
    const double lo = bounds.lower[j];
    const double hi = bounds.upper[j];
    if (position[j] >= lo && position[j] <= hi) continue;
    switch (wall) {
      case Wall::Absorbing:
        position[j] = position[j] < lo ? lo : hi;
        velocity[j] = 0.0;
        break;
      case Wall::Reflecting: {
        int reflections = 0;
        while (position[j] < lo || position[j] > hi) {
          position[j] = position[j] < lo ? 2.0 * lo - position[j]
                                         : 2.0 * hi - position[j];
          if (++reflections > 100)
            throw std::runtime_error(
                "apply_wall: reflecting wall did not converge after 100 "
                "reflections (degenerate box?)");
        }
        velocity[j] = -velocity[j];
        break;
      }
      case Wall::Invisible:
        inside = false;
        break;
    }
  }
  return inside;
}

// v'(j) = w v(j) + c1 R1(0,1) (pbest(j)-x(j)) + c2 R2(0,1) (gbest(j)-x(j)),
// clamped to +/- v_max[j]. Fresh R per component per term, R1 before R2.
template <RandomSource R>
std::vector<double> velocity_update(const Particle& p, const SolutionVector& gbest,
                                    const PsoConfig& cfg,
                                    std::span<const double> v_max, R& rng) {
  std::vector<double> v(p.velocity.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    double vj = cfg.inertia * p.velocity[j] +
                cfg.c1 * r1 * (p.pbest_position[j] - p.position[j]) +
                cfg.c2 * r2 * (gbest[j] - p.position[j]);
    if (!v_max.empty()) vj = std::clamp(vj, -v_max[j], v_max[j]);
    v[j] = vj;
  }
  return v;
}

namespace detail {

inline std::vector<double> resolve_v_max(const PsoConfig& cfg, const Bounds& b) {
  if (cfg.v_max.has_value()) {
    if (cfg.v_max->size() != b.size())
      throw std::invalid_argument("PsoConfig: v_max dimension mismatch");
    return *cfg.v_max;
  }
  std::vector<double> vm(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) vm[j] = b.span(j);
  return vm;
}

}  // namespace detail

// Positions uniform in the box, velocities uniform in +/- span/2, all
// particles evaluated (counter +swarm_size), pbest set to self.
inline Swarm pso_init(const Objective& objective, const PsoConfig& cfg,
                      RngStream& rng, EvaluationCounter& counter) {
  if (cfg.swarm_size == 0)
    throw std::invalid_argument("pso_init: swarm_size must be >= 1");
  const Bounds& b = objective.bounds();
  const std::size_t n = objective.dimension();
  Swarm swarm;
  swarm.particles.reserve(cfg.swarm_size);
  for (std::size_t i = 0; i < cfg.swarm_size; ++i) {
    Particle p;
    p.position.resize(n);
    p.velocity.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      p.position[j] = b.lower[j] + rng.uniform() * b.span(j);
    for (std::size_t j = 0; j < n; ++j)
      p.velocity[j] = (rng.uniform() - 0.5) * b.span(j);
    p.fitness = objective.evaluate(p.position);
    ++counter.count;
    p.pbest_position = p.position;
    p.pbest_fitness = *p.fitness;
    if (i == 0 || p.pbest_fitness < swarm.gbest_fitness) {
      swarm.gbest_fitness = p.pbest_fitness;
      swarm.gbest_position = p.pbest_position;
    }
    swarm.particles.push_back(std::move(p));
  }
  return swarm;
}

// One synchronous step: all velocities update against the step-start gbest,
// positions move and hit the wall, then in-bounds particles are evaluated
// (one counter tick each) and pbest/gbest advance. gbest only improves,
// and only through fresh in-bounds evaluations.
inline Swarm pso_step(Swarm swarm, const Objective& objective, const PsoConfig& cfg,
                      RngStream& rng, EvaluationCounter& counter) {
  const Bounds& b = objective.bounds();
  const std::vector<double> v_max = detail::resolve_v_max(cfg, b);
  RngStream gen = rng.split_next();
  RngStream r_vel = gen.split(phase::kVelocity);

  const SolutionVector gbest = swarm.gbest_position;  // frozen for this step
  for (Particle& p : swarm.particles) {
    p.velocity = velocity_update(p, gbest, cfg, v_max, r_vel);
    for (std::size_t j = 0; j < p.position.size(); ++j)
      p.position[j] += p.velocity[j];
    p.in_bounds = apply_wall(p.position, p.velocity, b, cfg.wall);
  }
  for (Particle& p : swarm.particles) {
    if (!p.in_bounds) continue;
    const double f = objective.evaluate(p.position);
    ++counter.count;
    p.fitness = f;
    if (f < p.pbest_fitness) {
      p.pbest_fitness = f;
      p.pbest_position = p.position;
    }
    if (f < swarm.gbest_fitness) {
      swarm.gbest_fitness = f;
      swarm.gbest_position = p.position;
    }
  }
  return swarm;
}

}  // namespace epso
