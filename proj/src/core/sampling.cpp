#include "spintomo/sampling.hpp"

#include <cmath>
#include <string>

#include "spintomo/errors.hpp"
#include "spintomo/inequalities.hpp"
#include "spintomo/rng.hpp"

namespace spintomo {
namespace {

bool same_angles(const Direction& a, const Direction& b) {
  return std::abs(a.theta() - b.theta()) <= 1e-12 && std::abs(a.phi() - b.phi()) <= 1e-12;
}

}  // namespace

ShotRecord sample_tomogram(const Tomogram& exact, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("sampling needs at least one shot");
  const auto probs = exact.probabilities();
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
    if (probs[i] > 0.0) last_nonzero = i;
  }
  // Everything past the last possible outcome is folded into it, so
  // rounding in the running sum cannot select an impossible entry.
  for (std::size_t i = last_nonzero; i < cdf.size(); ++i) cdf[i] = 1.0;

  ShotRecord rec{exact.spin(), exact.directions(), std::vector<std::uint64_t>(probs.size(), 0), shots, seed};
  CounterRng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    std::size_t k = 0;
    while (u >= cdf[k]) ++k;
    ++rec.counts[k];
  }
  return rec;
}

ShotRecord sample(const DensityMatrix& rho, std::span<const Direction> dirs, std::uint64_t shots,
                  std::uint64_t seed) {
  return sample_tomogram(tomogram_multi(rho, dirs), shots, seed);
}

EmpiricalProvider::EmpiricalProvider(std::vector<ShotRecord> records) : records_(std::move(records)) {
  if (records_.empty()) throw DomainError("empirical provider needs at least one shot record");
  spin_ = records_.front().spin;
  parties_ = records_.front().directions.size();
  for (const ShotRecord& r : records_) {
    if (r.shots < 1) throw DomainError("shot record has no shots");
    if (r.spin != spin_ || r.directions.size() != parties_) {
      throw ShapeError("shot records mix different system layouts");
    }
    std::uint64_t total = 0;
    for (auto c : r.counts) total += c;
    if (total != r.shots) throw InvariantError("shot record counts do not sum to shots");
  }
}

Tomogram EmpiricalProvider::tomogram(std::span<const Direction> dirs) const {
  for (const ShotRecord& r : records_) {
    if (r.directions.size() != dirs.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < dirs.size() && match; ++i) match = same_angles(r.directions[i], dirs[i]);
    if (!match) continue;
    std::vector<double> freq(r.counts.size());
    for (std::size_t i = 0; i < freq.size(); ++i)
      freq[i] = static_cast<double>(r.counts[i]) / static_cast<double>(r.shots);
    return Tomogram(r.spin, r.directions, std::move(freq));
  }
  std::string msg = "no shot record at directions";
  for (const Direction& d : dirs) msg += " (" + std::to_string(d.theta()) + ", " + std::to_string(d.phi()) + ")";
  throw MissingDataError(msg);
}

EmpiricalProvider empirical_provider(const ShotRecord& r) { return EmpiricalProvider({r}); }

std::array<std::array<Direction, 2>, 4> chsh_settings(std::span<const Direction> quad) {
  if (quad.size() != 4) throw ShapeError("CHSH needs four directions (a, b, b', c)");
  const Direction& a = quad[0];
  const Direction& b = quad[1];
  const Direction& bp = quad[2];
  const Direction& c = quad[3];
  return {{{a, b}, {a, c}, {bp, b}, {bp, c}}};
}

std::uint64_t setting_seed(std::uint64_t seed, std::size_t index) { return derive_seed(seed, index); }

Estimate estimate_chsh(const DensityMatrix& rho, std::span<const Direction> quad, std::uint64_t shots_per_setting,
                       std::uint64_t seed) {
  if (shots_per_setting < 100) throw DomainError("estimate_chsh needs at least 100 shots per setting");
  if (rho.dim() != 4) throw DomainError("estimate_chsh needs a two-qubit state");
  const auto settings = chsh_settings(quad);
  std::vector<ShotRecord> records;
  for (std::size_t i = 0; i < settings.size(); ++i)
    records.push_back(sample(rho, settings[i], shots_per_setting, setting_seed(seed, i)));
  const EmpiricalProvider provider(std::move(records));

  std::array<double, 4> m{};
  for (std::size_t i = 0; i < settings.size(); ++i) m[i] = correlation_M(provider, settings[i][0], settings[i][1]);
  const double diff = m[0] - m[1];
  const double value = std::abs(diff) + m[2] + m[3] - 2.0;

  // d lhs / d M_ab = sign(diff), d lhs / d M_ac = -sign(diff), others 1:
  // every gradient entry squares to 1.
  const double n = static_cast<double>(shots_per_setting);
  double var = 0.0;
  for (double mi : m) var += (1.0 - mi * mi) / n;
  return {value, std::sqrt(var), shots_per_setting};
}

std::array<Direction, 4> optimal_chsh_quad() {
  const double r = 1.0 / std::sqrt(2.0);
  const Direction b = Direction::z_axis();
  const Direction c = Direction::x_axis();
  const Direction a = Direction::from_vector({-r, 0.0, r});
  const Direction bp = Direction::from_vector({-r, 0.0, -r});
  return {a, b, bp, c};
}

}  // namespace spintomo
