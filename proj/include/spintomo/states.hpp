#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spintomo/linalg.hpp"

namespace spintomo {

class CounterRng;

// Hermitian, unit-trace, positive semidefinite operator. Construction
// validates: Hermitian and trace within 1e-10, PSD within 1e-9.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-9;

  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  ComplexMatrix matrix_;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Pauli-basis coefficients of a one- or two-qubit state:
// x_i = tr(rho sigma_i (x) 1), y_j = tr(rho 1 (x) tau_j), z_ij = tr(rho sigma_i (x) tau_j).
// For a single qubit only x is set.
struct BlochData {
  Vec3 x{};
  std::optional<Vec3> y;
  std::optional<Mat3> z;
};

// Convex combination sum_k p_k rho_A(k) (x) rho_B(k).
struct SeparableSpec {
  std::vector<double> weights;
  std::vector<std::pair<DensityMatrix, DensityMatrix>> factors;
};

// sigma_0 = 1, sigma_1..3 = x, y, z.
ComplexMatrix pauli(int i);

// Spin-1 matrices (J1, J2, J3) in the |+1>, |0>, |-1> basis.
std::array<ComplexMatrix, 3> spin1_generators();

DensityMatrix basis_projector(std::size_t dim, std::size_t index);

// V (e_i (x) e_j) = e_j (x) e_i on C^d (x) C^d, d in {2, 3}.
ComplexMatrix swap_operator(std::size_t d);

// rho_d(phi) = [(d - phi) 1 + (d phi - 1) V] / (d^3 - d), phi in [-1, 1].
// phi equals tr(rho V); phi = -1 is the antisymmetric projector.
DensityMatrix werner(std::size_t d, double phi);

BlochData bloch_decompose(const DensityMatrix& rho);

// Inverse of bloch_decompose for two qubits (no validation of the result).
ComplexMatrix bloch_assemble(const BlochData& bloch);

DensityMatrix mix_separable(const SeparableSpec& spec);

// rho = G G^dagger / tr(G G^dagger), G with i.i.d. complex normal entries.
DensityMatrix ginibre_state(std::size_t dim, CounterRng& rng);

// |psi><psi| for a Haar-random pure state.
DensityMatrix random_pure_state(std::size_t dim, CounterRng& rng);

// Random separable two-party state with `terms` product terms of local
// dimension `local_dim`; factors mix pure and Ginibre states.
SeparableSpec random_separable_spec(std::size_t local_dim, std::size_t terms, CounterRng& rng);

// Random mixture of anti-correlated qubit products rho(r) (x) rho(-r),
// rho(r) = (1 + r.sigma)/2 with |r| <= 1.
SeparableSpec random_anticorrelated_qubit_spec(std::size_t terms, CounterRng& rng);

// Frobenius norm of a - b.
double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace spintomo
