#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spintomo/linalg.hpp"
#include "spintomo/states.hpp"

namespace spintomo {

// Point on the unit sphere. Angles are normalized on construction:
// theta reflected into [0, pi] (shifting phi by pi when reflected), phi
// wrapped into [0, 2 pi).
class Direction {
 public:
  Direction() : Direction(0.0, 0.0) {}
  Direction(double theta, double phi);

  // Normalizes (x, y, z); throws DomainError for the zero vector.
  static Direction from_vector(const Vec3& v);
  static Direction x_axis() { return from_vector({1.0, 0.0, 0.0}); }
  static Direction y_axis() { return from_vector({0.0, 1.0, 0.0}); }
  static Direction z_axis() { return Direction(0.0, 0.0); }
  Direction operator-() const { return from_vector({-cartesian_[0], -cartesian_[1], -cartesian_[2]}); }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  const Vec3& cartesian() const { return cartesian_; }

  double dot(const Direction& other) const;

 private:
  Direction(double theta, double phi, const Vec3& cartesian)
      : theta_(theta), phi_(phi), cartesian_(cartesian) {}

  double theta_;
  double phi_;
  Vec3 cartesian_;
};

double dot(const Vec3& a, const Vec3& b);

enum class Spin { half, one };

// Local Hilbert-space dimension of a spin (2 or 3).
std::size_t spin_dimension(Spin s);
Spin spin_for_dimension(std::size_t dim);

// Spin and party count of an N-party system whose total dimension is
// 2^N or 3^N (N >= 1).
struct SystemLayout {
  Spin spin;
  std::size_t parties;
};
SystemLayout layout_for_dimension(std::size_t dim);

// Outcome labels in table order, highest projection first:
// {+1, -1} for spin 1/2 and {+1, 0, -1} for spin 1.
std::span<const int> outcome_labels(Spin s);

// Label tuple at a flat row-major outcome index, and the inverse.
std::vector<int> outcome_tuple(Spin spin, std::size_t parties, std::size_t index);
std::size_t outcome_index(Spin spin, std::span<const int> labels);

// Rank-1 projector on the eigenstate of n.S with projection m.
struct Dequantizer {
  Spin spin;
  int m;
  Direction direction;
  ComplexMatrix matrix;
};

// The 2x2 SU(2) element with entries
//   cos(t/2) e^{i(p+s)/2},  sin(t/2) e^{i(p-s)/2},
//  -sin(t/2) e^{-i(p-s)/2}, cos(t/2) e^{-i(p+s)/2}.
// U |+1/2> points along (-sin t cos p, sin t sin p, cos t).
ComplexMatrix rotation_spin_half(double theta, double phi, double psi);

// 1/2 (1 + m n.sigma), m = +-1.
Dequantizer dequantizer_qubit(int m, const Direction& n);

// (1 - m^2) 1 + (m/2) n.J + (3 m^2/2 - 1) (n.J)^2, m in {-1, 0, 1}.
Dequantizer dequantizer_qutrit(int m, const Direction& n);

Dequantizer dequantizer(Spin spin, int m, const Direction& n);

// Joint probability table of spin projections for a fixed tuple of
// directions (one per party). Entries are stored row-major over outcome
// tuples, each party's outcomes ordered as outcome_labels().
class Tomogram {
 public:
  static constexpr double kNegativeClamp = 1e-12;
  static constexpr double kNormTol = 1e-10;

  // Clamps entries in [-1e-12, 0) to 0; throws InvariantError for more
  // negative entries or a total differing from 1 by more than 1e-10.
  Tomogram(Spin spin, std::vector<Direction> directions, std::vector<double> probabilities);

  Spin spin() const { return spin_; }
  std::size_t parties() const { return directions_.size(); }
  std::size_t outcomes_per_party() const { return spin_dimension(spin_); }
  const std::vector<Direction>& directions() const { return directions_; }
  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }

  // Labels of the outcome tuple at flat index `index`.
  std::vector<int> labels_at(std::size_t index) const;
  std::size_t index_of(std::span<const int> labels) const;
  double probability(std::span<const int> labels) const;
  double probability(std::initializer_list<int> labels) const {
    return probability(std::span<const int>(labels.begin(), labels.size()));
  }

  // Single-party marginal, ordered as outcome_labels().
  std::vector<double> marginal(std::size_t party) const;

 private:
  Spin spin_;
  std::vector<Direction> directions_;
  std::vector<double> probabilities_;
};

// omega(m, n) = tr(rho Pi(m, n)) for a qubit or qutrit.
Tomogram tomogram_single(const DensityMatrix& rho, const Direction& n);

// omega(m_1..m_N) = tr(rho Pi(m_1, n_1) (x) ... (x) Pi(m_N, n_N)); all
// parties share one spin, inferred from rho.dim() and dirs.size().
Tomogram tomogram_multi(const DensityMatrix& rho, std::span<const Direction> dirs);

// 1/4 (1 + m1 n1.x + m2 n2.y + m1 m2 n1.z.n2).
double two_qubit_tomo_closed(const BlochData& bloch, int m1, int m2, const Direction& n1,
                             const Direction& n2);

// Two-qutrit Werner tomogram in closed form.
double werner_qutrit_tomo_closed(double phi, int m1, int m2, const Direction& n1,
                                 const Direction& n2);

// True iff every entry equals the product of the two marginals within tol.
bool is_factorized(const Tomogram& t, double tol);

// Qubit: {z, x, y}. Qutrit: 5 Fibonacci-sphere points.
std::vector<Direction> default_reconstruction_directions(Spin spin);

// Every party-direction combination of the per-party defaults.
std::vector<std::vector<Direction>> default_reconstruction_settings(Spin spin, std::size_t parties);

// Exact tomograms of `rho` over default_reconstruction_settings.
std::vector<Tomogram> default_reconstruction_tomograms(const DensityMatrix& rho);

struct Reconstruction {
  DensityMatrix state;
  bool projected = false;  // eigenvalue clipping was needed
  double residual = 0.0;   // root sum of squared tomogram residuals before projection
  std::size_t rank = 0;
};

// Hermitian unit-trace least-squares fit of tomogram data. Throws
// IllPosedError (naming each party's distinct directions) when the design
// matrix rank falls below dim^2 - 1 at relative threshold 1e-8.
Reconstruction reconstruct(std::span<const Tomogram> samples, std::size_t dim);

// n points of the equal-area Fibonacci sphere, deterministic.
std::vector<Direction> fibonacci_directions(std::size_t n);

// n directions uniform on the sphere drawn from CounterRng(seed).
std::vector<Direction> random_directions(std::size_t n, std::uint64_t seed);

}  // namespace spintomo
