#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spintomo/provider.hpp"
#include "spintomo/states.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

// Outcome counts of repeated local measurements at one direction tuple.
// counts is laid out like Tomogram::probabilities().
struct ShotRecord {
  Spin spin = Spin::half;
  std::vector<Direction> directions;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;  // per setting
};

// Draws `shots` i.i.d. outcome tuples from the exact tomogram by inverse
// CDF over the outcome table (CounterRng(seed), one draw per shot).
// Zero-probability outcomes are never drawn.
ShotRecord sample(const DensityMatrix& rho, std::span<const Direction> dirs, std::uint64_t shots,
                  std::uint64_t seed);

// Same, from an explicit tomogram.
ShotRecord sample_tomogram(const Tomogram& exact, std::uint64_t shots, std::uint64_t seed);

// Relative frequencies at the recorded direction tuples. Queries at any
// other tuple (angles compared within 1e-12) throw MissingDataError.
class EmpiricalProvider final : public TomogramProvider {
 public:
  explicit EmpiricalProvider(std::vector<ShotRecord> records);

  Spin spin() const override { return spin_; }
  std::size_t parties() const override { return parties_; }
  Tomogram tomogram(std::span<const Direction> dirs) const override;
  using TomogramProvider::tomogram;

  const std::vector<ShotRecord>& records() const { return records_; }

 private:
  std::vector<ShotRecord> records_;
  Spin spin_;
  std::size_t parties_;
};

EmpiricalProvider empirical_provider(const ShotRecord& r);

// The four settings measured by a CHSH experiment for quad (a, b, b', c):
// (a, b), (a, c), (b', b), (b', c).
std::array<std::array<Direction, 2>, 4> chsh_settings(std::span<const Direction> quad);

// Seed used for setting `index` of a multi-setting experiment.
std::uint64_t setting_seed(std::uint64_t seed, std::size_t index);

// Plug-in CHSH left-hand side from shots_per_setting shots at each of the
// four settings, with a delta-method standard error from the per-setting
// multinomial variances (var M = (1 - M^2) / N for +-1 products).
Estimate estimate_chsh(const DensityMatrix& rho, std::span<const Direction> quad, std::uint64_t shots_per_setting,
                       std::uint64_t seed);

// The canonical maximally violating CHSH quad for the singlet:
// b = z, c = x, a = (b - c)/|b - c|, b' = -(b + c)/|b + c|.
std::array<Direction, 4> optimal_chsh_quad();

}  // namespace spintomo
