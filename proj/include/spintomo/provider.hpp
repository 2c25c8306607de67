#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spintomo/states.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

// Source of joint tomograms at requested direction tuples. Inequality
// evaluators only talk to this interface, so exact, closed-form and
// empirical data are interchangeable. Implementations are immutable and
// safe to share across threads.
class TomogramProvider {
 public:
  virtual ~TomogramProvider() = default;

  virtual Spin spin() const = 0;
  virtual std::size_t parties() const = 0;
  virtual Tomogram tomogram(std::span<const Direction> dirs) const = 0;

  Tomogram tomogram(const Direction& n1, const Direction& n2) const {
    const Direction d[] = {n1, n2};
    return tomogram(d);
  }
};

// Exact trace evaluation tr(rho (x) Pi).
class DensityMatrixProvider final : public TomogramProvider {
 public:
  explicit DensityMatrixProvider(DensityMatrix rho);

  Spin spin() const override { return layout_.spin; }
  std::size_t parties() const override { return layout_.parties; }
  Tomogram tomogram(std::span<const Direction> dirs) const override;
  using TomogramProvider::tomogram;

  const DensityMatrix& state() const { return rho_; }

 private:
  DensityMatrix rho_;
  SystemLayout layout_;
};

// Closed-form two-party Werner tomograms (qubit or qutrit).
class WernerClosedProvider final : public TomogramProvider {
 public:
  WernerClosedProvider(std::size_t d, double phi);

  Spin spin() const override { return spin_; }
  std::size_t parties() const override { return 2; }
  Tomogram tomogram(std::span<const Direction> dirs) const override;
  using TomogramProvider::tomogram;

  double phi() const { return phi_; }

 private:
  Spin spin_;
  double phi_;
};

}  // namespace spintomo
