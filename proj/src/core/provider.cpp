#include "spintomo/provider.hpp"

#include "spintomo/errors.hpp"

namespace spintomo {

DensityMatrixProvider::DensityMatrixProvider(DensityMatrix rho)
    : rho_(std::move(rho)), layout_(layout_for_dimension(rho_.dim())) {}

Tomogram DensityMatrixProvider::tomogram(std::span<const Direction> dirs) const {
  return tomogram_multi(rho_, dirs);
}

WernerClosedProvider::WernerClosedProvider(std::size_t d, double phi) : phi_(phi) {
  if (d != 2 && d != 3) throw DomainError("Werner provider supports d = 2 or 3");
  if (!(phi >= -1.0 && phi <= 1.0)) throw DomainError("Werner parameter phi outside [-1, 1]");
  spin_ = spin_for_dimension(d);
}

Tomogram WernerClosedProvider::tomogram(std::span<const Direction> dirs) const {
  if (dirs.size() != 2) throw ShapeError("Werner provider is two-party");
  const auto labels = outcome_labels(spin_);
  std::vector<double> probs;
  probs.reserve(labels.size() * labels.size());
  if (spin_ == Spin::half) {
    const double k = (2.0 * phi_ - 1.0) / 3.0;
    const double c = dirs[0].dot(dirs[1]);
    for (int m1 : labels)
      for (int m2 : labels) probs.push_back(0.25 * (1.0 + k * m1 * m2 * c));
  } else {
    for (int m1 : labels)
      for (int m2 : labels) probs.push_back(werner_qutrit_tomo_closed(phi_, m1, m2, dirs[0], dirs[1]));
  }
  return Tomogram(spin_, {dirs[0], dirs[1]}, std::move(probs));
}

}  // namespace spintomo
