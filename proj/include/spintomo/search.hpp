#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spintomo/inequalities.hpp"
#include "spintomo/provider.hpp"

namespace spintomo {

struct SearchConfig {
  std::size_t restarts = 32;
  std::size_t max_iterations = 4000;  // per restart
  double tolerance = 1e-10;           // simplex diameter in angle space
  std::uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  std::size_t threads = 0;
};

struct SearchResult {
  InequalityReport best_report;
  double best_margin = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Minimizes f from `start` with an axis-aligned initial simplex of edge
// `step`. Stops when the simplex diameter (max coordinate distance to the
// best vertex) drops below `tolerance`, the value spread vanishes, or after
// `max_iterations`.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, double step, std::size_t max_iterations,
                             double tolerance);

// Number of angle coordinates searched for an inequality: 6 for wigner
// and uffink (the primed settings live on the circle orthogonal to the
// unprimed ones), 8 for chsh.
std::size_t search_dimension(InequalityKind kind);

// Maps angle coordinates onto the inequality's direction tuple.
std::vector<Direction> decode_directions(InequalityKind kind, std::span<const double> angles);

// Nelder-Mead over the stacked angle coordinates, restarted from seeded
// uniform points on the sphere; returns the best margin found.
// Deterministic given cfg.seed.
SearchResult maximize_margin(const TomogramProvider& provider, InequalityKind kind, const SearchConfig& cfg);

struct ThresholdResult {
  std::optional<double> phi;  // empty: predicate has no sign change on [-1, 1]
  bool monotone = true;       // spot check of the predicate on a 9-point phi grid
  std::size_t searches = 0;
};

// Bisection in the Werner parameter of "maximized margin is a violation".
// Assumes the predicate is monotone in phi (spot checked, not enforced).
ThresholdResult threshold_phi(std::size_t d, InequalityKind kind, const SearchConfig& cfg, double bisect_tol);

}  // namespace spintomo
