// Shared domain types: solution/strategy vectors, bounds, the objective
// contract, evaluation accounting, and population initialization.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epso/rng.hpp"

namespace epso {

// Real parameter vector of the problem dimension. Units are problem-defined
// (wavelengths for arrays, millimeters for strip surfaces).
using SolutionVector = std::vector<double>;

// Per-component mutation scales (eta). Strictly positive.
using StrategyVector = std::vector<double>;

// Per-dimension feasible box.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  Bounds() = default;
  Bounds(std::vector<double> lo, std::vector<double> hi)
      : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
      throw std::invalid_argument("Bounds: lower/upper size mismatch");
    for (std::size_t j = 0; j < lower.size(); ++j)
      if (!(lower[j] < upper[j]))
        throw std::invalid_argument("Bounds: lower[" + std::to_string(j) +
                                    "] must be < upper[" + std::to_string(j) + "]");
  }

  static Bounds uniform(std::size_t n, double lo, double hi) {
    return Bounds(std::vector<double>(n, lo), std::vector<double>(n, hi));
  }

  std::size_t size() const { return lower.size(); }
  double span(std::size_t j) const { return upper[j] - lower[j]; }

  bool contains(std::span<const double> x) const {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] < lower[j] || x[j] > upper[j]) return false;
    return true;
  }
};

// Objective contract: a pure, deterministic map from a solution vector to a
// scalar fitness (lower is better). Implementations must be total on the
// box and return finite penalty-laden values for constraint-violating
// inputs rather than failing.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dimension() const = 0;
  virtual const Bounds& bounds() const = 0;
  virtual double evaluate(const SolutionVector& x) const = 0;
};

// Objective over a plain callable; handy in tests and demos.
template <typename F>
class FunctionObjective final : public Objective {
 public:
  FunctionObjective(std::size_t n, Bounds b, F f)
      : n_(n), bounds_(std::move(b)), f_(std::move(f)) {}
  std::size_t dimension() const override { return n_; }
  const Bounds& bounds() const override { return bounds_; }
  double evaluate(const SolutionVector& x) const override { return f_(x); }

 private:
  std::size_t n_;
  Bounds bounds_;
  F f_;
};

template <typename F>
FunctionObjective<F> make_objective(std::size_t n, Bounds b, F f) {
  return FunctionObjective<F>(n, std::move(b), std::move(f));
}

// Counts objective evaluations; the x-axis of every convergence comparison.
struct EvaluationCounter {
  std::uint64_t count = 0;
};

// One population member: current point, its mutation scales, cached fitness,
// and the best point this lineage has ever occupied (PSO-style memory).
struct Individual {
  SolutionVector solution;
  StrategyVector strategy;
  std::optional<double> fitness;
  SolutionVector best_solution;
  std::optional<double> best_fitness;

  bool operator==(const Individual&) const = default;
};

// Scores the individual and maintains its personal-best record. Exactly one
// counter tick per call.
inline void evaluate(Individual& ind, const Objective& objective,
                     EvaluationCounter& counter) {
  const double f = objective.evaluate(ind.solution);
  ++counter.count;
  ind.fitness = f;
  if (!ind.best_fitness.has_value() || f < *ind.best_fitness) {
    ind.best_fitness = f;
    ind.best_solution = ind.solution;
  }
}

// Smallest admissible eta per dimension: 1e-4 of the box span. Applied after
// every strategy update so the lognormal walk cannot collapse irreversibly.
inline std::vector<double> eta_floor(const Bounds& bounds) {
  std::vector<double> floor(bounds.size());
  for (std::size_t j = 0; j < bounds.size(); ++j) floor[j] = 1e-4 * bounds.span(j);
  return floor;
}

// mu individuals uniform in the box, eta initialized to span/10, all
// evaluated (counter +mu) with personal best set to self.
inline std::vector<Individual> init_population(std::size_t mu,
                                               const Objective& objective,
                                               RngStream& rng,
                                               EvaluationCounter& counter) {
  if (mu == 0) throw std::invalid_argument("init_population: mu must be >= 1");
  const Bounds& b = objective.bounds();
  const std::size_t n = objective.dimension();
  std::vector<Individual> pop;
  pop.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    Individual ind;
    ind.solution.resize(n);
    ind.strategy.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      ind.solution[j] = b.lower[j] + rng.uniform() * b.span(j);
      ind.strategy[j] = b.span(j) / 10.0;
    }
    ind.best_solution = ind.solution;
    evaluate(ind, objective, counter);
    pop.push_back(std::move(ind));
  }
  return pop;
}

// Index of the minimum-fitness member; ties go to the lower index.
inline std::size_t best_index(const std::vector<Individual>& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].fitness.value() < pop[best].fitness.value()) best = i;
  return best;
}

}  // namespace epso
