// Objective functions: symmetric aperiodic-array sidelobe minimization,
// flat-top pattern synthesis over a pluggable pattern model, and the sphere
// sanity objective.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epso/core.hpp"

namespace epso {

// ---------------------------------------------------------------------------
// Pattern helpers
// ---------------------------------------------------------------------------

// First index strictly past the first local minimum of the sample sequence,
// scanning forward from `begin`; nullopt when the sequence never rises again
// (no sidelobe region). Plateaus extend the descent.
inline std::optional<std::size_t> sidelobe_region_start(std::span<const double> s,
                                                        std::size_t begin = 0) {
  std::size_t k = begin + 1;
  while (k < s.size() && s[k] <= s[k - 1]) ++k;
  if (k >= s.size()) return std::nullopt;
  return k;
}

namespace detail {

// Sum of cos(phase * (u0 + i*du)) for i = 0..count-1, accumulated into out[i],
// via the three-term cosine recurrence (two flops per point instead of a cos
// call; error stays below ~1e-9 over 10^4 points).
inline void accumulate_cos_ramp(std::span<double> out, double phase, double u0,
                                double du) {
  const std::size_t count = out.size();
  if (count == 0) return;
  double c_prev = std::cos(phase * u0);
  out[0] += c_prev;
  if (count == 1) return;
  double c_curr = std::cos(phase * (u0 + du));
  out[1] += c_curr;
  const double twist = 2.0 * std::cos(phase * du);
  for (std::size_t i = 2; i < count; ++i) {
    const double c_next = twist * c_curr - c_prev;
    out[i] += c_next;
    c_prev = c_curr;
    c_curr = c_next;
  }
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Aperiodic linear array (20 isotropic elements, symmetric, aperture 8
// wavelengths, outermost element fixed at 4): minimize the maximum sidelobe
// level over the 9 free right-half positions.
// ---------------------------------------------------------------------------

inline constexpr double kArrayFixedOuter = 4.0;   // wavelengths
inline constexpr double kArrayMinSpacing = 0.3;   // wavelengths
inline constexpr double kArrayMinPosition = 0.15; // wavelengths
inline constexpr std::size_t kArrayFreePositions = 9;

// Normalized array factor of the symmetric, uniformly excited array whose
// right-half element positions (in wavelengths) are given: AF(u) =
// |mean_i cos(2 pi x_i u)|, u = sin(theta). AF(0) = 1 exactly.
inline double array_factor(std::span<const double> positions, double u) {
  double sum = 0.0;
  for (double x : positions) sum += std::cos(2.0 * std::numbers::pi * x * u);
  return std::abs(sum) / static_cast<double>(positions.size());
}

// AF sampled on a uniform u-grid over [0, 1].
inline std::vector<double> array_factor_samples(std::span<const double> positions,
                                                std::size_t grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("array_factor_samples: need at least 2 points");
  std::vector<double> sums(grid_points, 0.0);
  const double du = 1.0 / static_cast<double>(grid_points - 1);
  for (double x : positions)
    detail::accumulate_cos_ramp(sums, 2.0 * std::numbers::pi * x, 0.0, du);
  const double inv = 1.0 / static_cast<double>(positions.size());
  for (double& s : sums) s = std::abs(s) * inv;
  return sums;
}

// Maximum sidelobe level in dB: the pattern is sampled on a uniform u-grid,
// the main beam extends from u=0 to the first local minimum, and the SLL is
// the largest sample beyond it (relative to the broadside peak at 0 dB).
// Returns 0 dB when no sidelobe region exists.
inline double max_sidelobe_level(std::span<const double> positions,
                                 std::size_t grid_points = 4001) {
  if (grid_points < 2001)
    throw std::invalid_argument("max_sidelobe_level: grid_points must be >= 2001");
  const std::vector<double> af = array_factor_samples(positions, grid_points);
  const auto start = sidelobe_region_start(af);
  if (!start.has_value()) return 0.0;
  double peak = 0.0;
  for (std::size_t i = *start; i < af.size(); ++i) peak = std::max(peak, af[i]);
  return 20.0 * std::log10(std::max(peak, 1e-15));
}

struct ArrayConstraintReport {
  bool feasible = true;
  double violation = 0.0;  // total violation distance in wavelengths
  std::vector<std::string> messages;
};

// Feasibility of 9 free positions (any order): pairwise spacing > 0.3,
// innermost position > 0.15, every position inside [0, 4]. The fixed outer
// element at 4.0 participates in the spacing checks.
inline ArrayConstraintReport check_array_constraints(std::span<const double> x) {
  ArrayConstraintReport report;
  if (x.size() != kArrayFreePositions) {
    report.feasible = false;
    report.violation = 1e3;
    report.messages.push_back("expected 9 positions, got " + std::to_string(x.size()));
    return report;
  }
  std::vector<double> all(x.begin(), x.end());
  all.push_back(kArrayFixedOuter);
  std::sort(all.begin(), all.end());

  auto flag = [&](double amount, const std::string& msg) {
    if (amount <= 0.0) return;
    report.feasible = false;
    report.violation += amount;
    report.messages.push_back(msg);
  };
  for (std::size_t j = 0; j < x.size(); ++j) {
    flag(-x[j], "position " + std::to_string(j) + " below 0");
    flag(x[j] - kArrayFixedOuter, "position " + std::to_string(j) + " beyond 4");
  }
  flag(kArrayMinPosition - all.front(),
       "innermost position " + std::to_string(all.front()) + " not above 0.15");
  for (std::size_t k = 1; k < all.size(); ++k)
    flag(kArrayMinSpacing - (all[k] - all[k - 1]),
         "spacing " + std::to_string(all[k] - all[k - 1]) + " not above 0.3");
  return report;
}

// Fitness = SLL_max of the completed design (sorted positions plus the fixed
// outer element), plus 100 per wavelength of constraint violation so any
// infeasibility dominates the ~25 dB achievable SLL range. Sorting first
// makes the fitness permutation-invariant and total on the whole box.
inline double array_fitness(const SolutionVector& x, std::size_t grid_points = 4001) {
  if (x.size() != kArrayFreePositions)
    throw std::invalid_argument("array_fitness: expected 9 positions");
  if (!detail::all_finite(x)) return 1e300;
  const ArrayConstraintReport report = check_array_constraints(x);
  std::vector<double> all(x.begin(), x.end());
  all.push_back(kArrayFixedOuter);
  std::sort(all.begin(), all.end());
  return max_sidelobe_level(all, grid_points) + 100.0 * report.violation;
}

class ArraySllObjective final : public Objective {
 public:
  explicit ArraySllObjective(std::size_t grid_points = 4001)
      : grid_points_(grid_points),
        bounds_(Bounds::uniform(kArrayFreePositions, 0.0, kArrayFixedOuter)) {}

  std::size_t dimension() const override { return kArrayFreePositions; }
  const Bounds& bounds() const override { return bounds_; }
  double evaluate(const SolutionVector& x) const override {
    return array_fitness(x, grid_points_);
  }
  std::size_t grid_points() const { return grid_points_; }

 private:
  std::size_t grid_points_;
  Bounds bounds_;
};

// ---------------------------------------------------------------------------
// Flat-top pattern synthesis over a strip surface stand-in
// ---------------------------------------------------------------------------

// Symmetric strip surface: 1 + 2K strips where the k-th right-half strip sits
// at the cumulative sum of the first k spacings. Element length and feed
// distance ride along in the design vector; the stand-in pattern model does
// not use them.
struct PrsDesign {
  std::vector<double> spacings_mm;
  double element_length_mm = 0.0;
  double feed_distance_mm = 0.0;
};

// Normalized power pattern contract: dB samples over the given elevation
// angles with the maximum over the grid at exactly 0 dB.
class PatternModel {
 public:
  virtual ~PatternModel() = default;
  virtual std::vector<double> pattern_db(const PrsDesign& design,
                                         std::span<const double> theta_deg) const = 0;
};

// Array-factor stand-in: the strips radiate as a symmetric, uniformly excited
// aperiodic array of isotropic elements. Uses the cosine recurrence when the
// requested grid is uniform in u = sin(theta), direct evaluation otherwise.
class StripArrayPatternModel final : public PatternModel {
 public:
  explicit StripArrayPatternModel(double wavelength_mm)
      : wavelength_mm_(wavelength_mm) {
    if (!(wavelength_mm > 0.0))
      throw std::invalid_argument("StripArrayPatternModel: wavelength must be > 0");
  }

  double wavelength_mm() const { return wavelength_mm_; }

  std::vector<double> pattern_db(const PrsDesign& design,
                                 std::span<const double> theta_deg) const override {
    const std::size_t count = theta_deg.size();
    if (count == 0) return {};
    std::vector<double> positions_wl;
    positions_wl.reserve(design.spacings_mm.size());
    double cum = 0.0;
    for (double s : design.spacings_mm) {
      cum += s;
      positions_wl.push_back(cum / wavelength_mm_);
    }

    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i)
      u[i] = std::sin(theta_deg[i] * std::numbers::pi / 180.0);

    std::vector<double> sums(count, 1.0);  // center strip
    if (uniform_spacing(u)) {
      const double du = count > 1 ? u[1] - u[0] : 0.0;
      for (double p : positions_wl) {
        std::vector<double> partial(count, 0.0);
        detail::accumulate_cos_ramp(partial, 2.0 * std::numbers::pi * p, u[0], du);
        for (std::size_t i = 0; i < count; ++i) sums[i] += 2.0 * partial[i];
      }
    } else {
      for (std::size_t i = 0; i < count; ++i)
        for (double p : positions_wl)
          sums[i] += 2.0 * std::cos(2.0 * std::numbers::pi * p * u[i]);
    }

    const double inv = 1.0 / static_cast<double>(1 + 2 * positions_wl.size());
    double peak = 0.0;
    for (double& s : sums) {
      s = std::abs(s) * inv;
      peak = std::max(peak, s);
    }
    std::vector<double> db(count);
    for (std::size_t i = 0; i < count; ++i)
      db[i] = 20.0 * std::log10(std::max(sums[i] / peak, 1e-15));
    return db;
  }

 private:
  static bool uniform_spacing(std::span<const double> u) {
    if (u.size() < 3) return true;
    const double du = u[1] - u[0];
    for (std::size_t i = 2; i < u.size(); ++i)
      if (std::abs((u[i] - u[i - 1]) - du) > 1e-12) return false;
    return true;
  }

  double wavelength_mm_;
};

// Flat-top objective knobs. The pattern is sampled on a grid uniform in
// u = sin(theta) over [0, 1]; the sector term reads the m_theta+1 samples
// nearest to the equally spaced angles m * theta_max / m_theta.
struct FlatTopProblem {
  double theta_max_deg = 60.0;  // flat-top half-width
  double delta_db = 0.0;        // allowed ripple
  double sll_cap_db = -20.0;    // sidelobe cap outside the sector
  double q1 = 1.0;              // ripple-excess penalty weight
  double q2 = 1.0;              // sidelobe-cap penalty weight
  std::size_t m_theta = 60;     // sector samples are m = 0..m_theta
  std::size_t u_points = 2001;  // pattern grid size
  std::shared_ptr<const PatternModel> model;
};

// Precomputed sampling plan shared by every evaluation of one problem.
struct FlatTopGrid {
  std::vector<double> theta_deg;           // asin-spaced: uniform in u
  std::vector<std::size_t> sector_indices; // grid index per sector sample
  std::size_t sector_edge = 0;             // last grid index inside the sector
};

inline FlatTopGrid make_flat_top_grid(const FlatTopProblem& problem) {
  if (!(problem.theta_max_deg > 0.0 && problem.theta_max_deg < 90.0))
    throw std::invalid_argument("FlatTopProblem: theta_max must be in (0, 90)");
  if (problem.u_points < 2)
    throw std::invalid_argument("FlatTopProblem: u_points must be >= 2");
  FlatTopGrid grid;
  const std::size_t count = problem.u_points;
  grid.theta_deg.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    grid.theta_deg[i] = std::asin(u) * 180.0 / std::numbers::pi;
  }
  const double u_edge = std::sin(problem.theta_max_deg * std::numbers::pi / 180.0);
  grid.sector_edge = static_cast<std::size_t>(u_edge * (count - 1) + 1e-9);
  grid.sector_indices.resize(problem.m_theta + 1);
  for (std::size_t m = 0; m <= problem.m_theta; ++m) {
    const double theta = static_cast<double>(m) * problem.theta_max_deg /
                         static_cast<double>(problem.m_theta);
    const double u = std::sin(theta * std::numbers::pi / 180.0);
    grid.sector_indices[m] = static_cast<std::size_t>(
        std::llround(u * static_cast<double>(count - 1)));
  }
  return grid;
}

// F = sum_m |E_dB(theta_m)|                          (ripple toward 0 dB)
//   + q1 * sum_m max(0-active) (|E_dB(theta_m)| - delta)   where the sample
//     deviates by more than delta
//   + q2 * (SLL - cap)                               when the realized SLL
//     (dB, negative) exceeds the cap
// with the SLL measured beyond the sector via the same first-local-minimum
// split as max_sidelobe_level (0 dB when no sidelobe region exists).
inline double flat_top_fitness(const PrsDesign& design, const FlatTopProblem& problem,
                               const FlatTopGrid& grid) {
  if (!problem.model) throw std::invalid_argument("FlatTopProblem: no pattern model");
  const std::vector<double> db = problem.model->pattern_db(design, grid.theta_deg);

  double ripple = 0.0;
  double excess = 0.0;
  for (std::size_t idx : grid.sector_indices) {
    const double deviation = std::abs(db[idx]);
    ripple += deviation;
    if (deviation > problem.delta_db) excess += deviation - problem.delta_db;
  }

  double sll_db = 0.0;
  if (const auto start = sidelobe_region_start(db, grid.sector_edge)) {
    double peak = -1e300;
    for (std::size_t i = *start; i < db.size(); ++i) peak = std::max(peak, db[i]);
    sll_db = peak;
  }
  const double cap_term =
      sll_db > problem.sll_cap_db ? problem.q2 * (sll_db - problem.sll_cap_db) : 0.0;
  return ripple + problem.q1 * excess + cap_term;
}

inline double flat_top_fitness(const PrsDesign& design, const FlatTopProblem& problem) {
  return flat_top_fitness(design, problem, make_flat_top_grid(problem));
}

// Optimizer-facing vector layout: [S_1..S_K, element length, feed distance].
// Out-of-box components are clamped for the pattern computation and charged
// 100 per millimeter of violation, keeping the objective total.
class FlatTopObjective final : public Objective {
 public:
  FlatTopObjective(FlatTopProblem problem, std::size_t n_spacings, Bounds bounds)
      : problem_(std::move(problem)),
        n_spacings_(n_spacings),
        bounds_(std::move(bounds)),
        grid_(make_flat_top_grid(problem_)) {
    if (bounds_.size() != n_spacings_ + 2)
      throw std::invalid_argument("FlatTopObjective: bounds must cover spacings + 2");
  }

  std::size_t dimension() const override { return n_spacings_ + 2; }
  const Bounds& bounds() const override { return bounds_; }

  double evaluate(const SolutionVector& x) const override {
    if (x.size() != dimension())
      throw std::invalid_argument("FlatTopObjective: dimension mismatch");
    if (!detail::all_finite(x)) return 1e300;
    double violation = 0.0;
    SolutionVector clamped(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      violation += std::max(0.0, bounds_.lower[j] - x[j]) +
                   std::max(0.0, x[j] - bounds_.upper[j]);
      clamped[j] = std::clamp(x[j], bounds_.lower[j], bounds_.upper[j]);
    }
    return flat_top_fitness(design_from(clamped), problem_, grid_) + 100.0 * violation;
  }

  PrsDesign design_from(const SolutionVector& x) const {
    PrsDesign d;
    d.spacings_mm.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_spacings_));
    d.element_length_mm = x[n_spacings_];
    d.feed_distance_mm = x[n_spacings_ + 1];
    return d;
  }

  const FlatTopProblem& problem() const { return problem_; }

 private:
  FlatTopProblem problem_;
  std::size_t n_spacings_;
  Bounds bounds_;
  FlatTopGrid grid_;
};

// ---------------------------------------------------------------------------
// Sphere
// ---------------------------------------------------------------------------

inline double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

class SphereObjective final : public Objective {
 public:
  explicit SphereObjective(std::size_t n = 9, double half_width = 5.12)
      : n_(n), bounds_(Bounds::uniform(n, -half_width, half_width)) {}

  std::size_t dimension() const override { return n_; }
  const Bounds& bounds() const override { return bounds_; }
  double evaluate(const SolutionVector& x) const override { return sphere(x); }

 private:
  std::size_t n_;
  Bounds bounds_;
};

}  // namespace epso
