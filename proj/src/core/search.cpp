#include "spintomo/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "spintomo/errors.hpp"
#include "spintomo/rng.hpp"

namespace spintomo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit vector in the plane orthogonal to n, at angle alpha from e_theta.
Direction orthogonal_direction(const Direction& n, double alpha) {
  const double t = n.theta();
  const double p = n.phi();
  const Vec3 e_theta{std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)};
  const Vec3 e_phi{-std::sin(p), std::cos(p), 0.0};
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return Direction::from_vector(
      {c * e_theta[0] + s * e_phi[0], c * e_theta[1] + s * e_phi[1], c * e_theta[2] + s * e_phi[2]});
}

std::vector<double> random_start(InequalityKind kind, CounterRng& rng) {
  std::vector<double> x;
  auto sphere_point = [&] {
    x.push_back(std::acos(1.0 - 2.0 * rng.uniform()));
    x.push_back(kTwoPi * rng.uniform());
  };
  if (kind == InequalityKind::uffink) {
    for (int party = 0; party < 2; ++party) {
      sphere_point();
      x.push_back(kTwoPi * rng.uniform());
    }
  } else {
    for (std::size_t i = 0; i < direction_count(kind); ++i) sphere_point();
  }
  return x;
}

struct RestartOutcome {
  std::vector<double> x;
  double margin = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  bool converged = false;
};

RestartOutcome run_restart(const TomogramProvider& provider, InequalityKind kind, const SearchConfig& cfg,
                           std::size_t restart) {
  CounterRng rng(derive_seed(cfg.seed, restart));
  auto objective = [&](std::span<const double> angles) {
    const auto dirs = decode_directions(kind, angles);
    return -evaluate(provider, kind, dirs).margin;
  };

  RestartOutcome out;
  std::size_t budget = cfg.max_iterations;
  NelderMeadResult nm = nelder_mead(objective, random_start(kind, rng), 0.6, budget, cfg.tolerance);
  out.evaluations += nm.evaluations;
  budget -= std::min(budget, nm.iterations);
  // Re-seed the simplex around the incumbent until it stops improving;
  // a collapsed simplex can stall short of the optimum.
  for (int polish = 0; polish < 6 && budget > 0; ++polish) {
    NelderMeadResult again = nelder_mead(objective, nm.x, 0.05, budget, cfg.tolerance);
    out.evaluations += again.evaluations;
    budget -= std::min(budget, again.iterations);
    const bool improved = again.value < nm.value - 1e-14;
    if (again.value <= nm.value) nm = std::move(again);
    if (!improved) break;
  }
  out.x = std::move(nm.x);
  out.margin = -nm.value;
  out.converged = nm.converged;
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, double step, std::size_t max_iterations,
                             double tolerance) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  NelderMeadResult res;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  res.evaluations = n + 1;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    const double spread = values[worst] - values[best];
    if (diameter < tolerance || spread <= 1e-15 * (1.0 + std::abs(values[best]))) {
      res.converged = true;
      break;
    }
    if (res.iterations >= max_iterations) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + (centroid[k] - simplex[worst][k]);
    const double fr = eval(trial);
    if (fr < values[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + 2.0 * (centroid[k] - simplex[worst][k]);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      const double target = outside ? trial[k] : simplex[worst][k];
      trial2[k] = centroid[k] + 0.5 * (target - centroid[k]);
    }
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  res.value = *best_it;
  res.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  return res;
}

std::size_t search_dimension(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::wigner: return 6;
    case InequalityKind::chsh: return 8;
    case InequalityKind::uffink: return 6;
  }
  return 0;
}

std::vector<Direction> decode_directions(InequalityKind kind, std::span<const double> angles) {
  if (angles.size() != search_dimension(kind)) {
    throw ShapeError("expected " + std::to_string(search_dimension(kind)) + " angle coordinates");
  }
  std::vector<Direction> dirs;
  if (kind == InequalityKind::uffink) {
    const Direction a(angles[0], angles[1]);
    const Direction b(angles[3], angles[4]);
    dirs = {a, orthogonal_direction(a, angles[2]), b, orthogonal_direction(b, angles[5])};
  } else {
    for (std::size_t i = 0; i < angles.size(); i += 2) dirs.emplace_back(angles[i], angles[i + 1]);
  }
  return dirs;
}

SearchResult maximize_margin(const TomogramProvider& provider, InequalityKind kind, const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw DomainError("search needs at least one restart");
  if (!(cfg.tolerance > 0.0)) throw DomainError("search tolerance must be positive");
  if (provider.parties() != 2) throw DomainError("inequality search needs a two-party provider");
  if (kind != InequalityKind::uffink && provider.spin() != Spin::half) {
    throw DomainError(std::string(to_string(kind)) + " is defined for two qubits");
  }

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::size_t workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min(workers, cfg.restarts);
  if (workers <= 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) outcomes[r] = run_restart(provider, kind, cfg, r);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t r = w; r < cfg.restarts; r += workers) outcomes[r] = run_restart(provider, kind, cfg, r);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Reduction in restart order; ties keep the earliest restart.
  std::size_t best = 0;
  SearchResult result;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.evaluations += outcomes[r].evaluations;
    if (outcomes[r].margin > outcomes[best].margin) best = r;
  }
  result.best_report = evaluate(provider, kind, decode_directions(kind, outcomes[best].x));
  result.best_margin = result.best_report.margin;
  result.converged = outcomes[best].converged;
  return result;
}

ThresholdResult threshold_phi(std::size_t d, InequalityKind kind, const SearchConfig& cfg, double bisect_tol) {
  if (!(bisect_tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  if (d != 2 && d != 3) throw DomainError("threshold search supports d = 2 or 3");
  if (d == 3 && kind != InequalityKind::uffink) {
    throw DomainError(std::string(to_string(kind)) + " is defined for two qubits (d = 2)");
  }
  ThresholdResult out;
  auto violated = [&](double phi) {
    ++out.searches;
    const DensityMatrixProvider provider(werner(d, phi));
    return maximize_margin(provider, kind, cfg).best_report.violated;
  };

  std::vector<bool> grid;
  for (int k = 0; k <= 8; ++k) grid.push_back(violated(-1.0 + 0.25 * k));
  int changes = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) changes += grid[k] != grid[k - 1];
  out.monotone = changes <= 1;

  const bool at_low = grid.front();
  if (at_low == grid.back()) return out;

  double lo = -1.0;
  double hi = 1.0;
  // Narrow using the grid before bisecting.
  for (int k = 1; k <= 8; ++k) {
    if (grid[k] != at_low) {
      lo = -1.0 + 0.25 * (k - 1);
      hi = -1.0 + 0.25 * k;
      break;
    }
  }
  while (hi - lo > bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (violated(mid) == at_low) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.phi = 0.5 * (lo + hi);
  return out;
}

}  // namespace spintomo
