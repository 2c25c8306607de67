#include "spintomo/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spintomo/errors.hpp"
#include "spintomo/rng.hpp"

namespace spintomo {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.rows() < 2) {
    throw ShapeError("density matrix must be square with dimension >= 2, got " +
                     std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
  }
  if (!is_hermitian(matrix_, kHermitianTol)) throw DomainError("density matrix is not Hermitian");
  const Complex tr = trace(matrix_);
  if (std::abs(tr - Complex{1.0}) > kTraceTol) {
    throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  if (!is_psd(matrix_, kPsdTol)) throw DomainError("density matrix is not positive semidefinite");
}

ComplexMatrix pauli(int i) {
  using namespace std::complex_literals;
  switch (i) {
    case 0: return ComplexMatrix::identity(2);
    case 1: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case 2: return ComplexMatrix{{0.0, -1i}, {1i, 0.0}};
    case 3: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    default: throw DomainError("pauli index " + std::to_string(i) + " outside 0..3");
  }
}

std::array<ComplexMatrix, 3> spin1_generators() {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  return {
      ComplexMatrix{{0.0, r, 0.0}, {r, 0.0, r}, {0.0, r, 0.0}},
      ComplexMatrix{{0.0, -1i * r, 0.0}, {1i * r, 0.0, -1i * r}, {0.0, 1i * r, 0.0}},
      ComplexMatrix::diagonal({1.0, 0.0, -1.0}),
  };
}

DensityMatrix basis_projector(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) + " out of range for dimension " +
                      std::to_string(dim));
  }
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

ComplexMatrix swap_operator(std::size_t d) {
  if (d != 2 && d != 3) throw DomainError("swap operator supports d = 2 or 3, got " + std::to_string(d));
  ComplexMatrix v(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
  return v;
}

DensityMatrix werner(std::size_t d, double phi) {
  if (d != 2 && d != 3) throw DomainError("Werner state supports d = 2 or 3, got " + std::to_string(d));
  if (!(phi >= -1.0 && phi <= 1.0)) {
    throw DomainError("Werner parameter phi = " + std::to_string(phi) + " outside [-1, 1]");
  }
  const double dd = static_cast<double>(d);
  const double norm = dd * dd * dd - dd;
  ComplexMatrix rho = ComplexMatrix::identity(d * d) * Complex{(dd - phi) / norm};
  rho += swap_operator(d) * Complex{(dd * phi - 1.0) / norm};
  return DensityMatrix(std::move(rho));
}

BlochData bloch_decompose(const DensityMatrix& rho) {
  BlochData out;
  if (rho.dim() == 2) {
    for (int i = 0; i < 3; ++i) out.x[i] = trace_product(rho.matrix(), pauli(i + 1)).real();
    return out;
  }
  if (rho.dim() != 4) {
    throw DomainError("bloch_decompose needs a one- or two-qubit state, got dimension " +
                      std::to_string(rho.dim()));
  }
  const ComplexMatrix id = pauli(0);
  Vec3 y{};
  Mat3 z{};
  for (int i = 0; i < 3; ++i) {
    out.x[i] = trace_product(rho.matrix(), kron(pauli(i + 1), id)).real();
    y[i] = trace_product(rho.matrix(), kron(id, pauli(i + 1))).real();
    for (int j = 0; j < 3; ++j)
      z[i][j] = trace_product(rho.matrix(), kron(pauli(i + 1), pauli(j + 1))).real();
  }
  out.y = y;
  out.z = z;
  return out;
}

ComplexMatrix bloch_assemble(const BlochData& bloch) {
  if (!bloch.y || !bloch.z) {
    ComplexMatrix m = pauli(0);
    for (int i = 0; i < 3; ++i) m += pauli(i + 1) * Complex{bloch.x[i]};
    return m * Complex{0.5};
  }
  const ComplexMatrix id = pauli(0);
  ComplexMatrix m = kron(id, id);
  for (int i = 0; i < 3; ++i) {
    m += kron(pauli(i + 1), id) * Complex{bloch.x[i]};
    m += kron(id, pauli(i + 1)) * Complex{(*bloch.y)[i]};
    for (int j = 0; j < 3; ++j) m += kron(pauli(i + 1), pauli(j + 1)) * Complex{(*bloch.z)[i][j]};
  }
  return m * Complex{0.25};
}

DensityMatrix mix_separable(const SeparableSpec& spec) {
  if (spec.weights.empty() || spec.weights.size() != spec.factors.size()) {
    throw DomainError("separable spec needs one weight per factor pair (" +
                      std::to_string(spec.weights.size()) + " weights, " +
                      std::to_string(spec.factors.size()) + " pairs)");
  }
  double total = 0.0;
  for (double w : spec.weights) {
    if (!(w >= 0.0)) throw DomainError("separable weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("separable weights sum to " + std::to_string(total) + ", expected 1");
  }
  const std::size_t da = spec.factors.front().first.dim();
  const std::size_t db = spec.factors.front().second.dim();
  ComplexMatrix rho(da * db, da * db);
  for (std::size_t k = 0; k < spec.factors.size(); ++k) {
    const auto& [a, b] = spec.factors[k];
    if (a.dim() != da || b.dim() != db) throw ShapeError("separable factors have inconsistent dimensions");
    rho += kron(a.matrix(), b.matrix()) * Complex{spec.weights[k]};
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix ginibre_state(std::size_t dim, CounterRng& rng) {
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex{rng.normal(), rng.normal()};
  ComplexMatrix rho = g * dagger(g);
  rho *= Complex{1.0 / trace(rho).real()};
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix random_pure_state(std::size_t dim, CounterRng& rng) {
  std::vector<Complex> psi(dim);
  double n2 = 0.0;
  for (Complex& c : psi) {
    c = Complex{rng.normal(), rng.normal()};
    n2 += std::norm(c);
  }
  ComplexMatrix rho(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = std::norm(psi[i]) / n2;
    for (std::size_t j = i + 1; j < dim; ++j) {
      rho(i, j) = psi[i] * std::conj(psi[j]) / n2;
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  return DensityMatrix(std::move(rho));
}

SeparableSpec random_separable_spec(std::size_t local_dim, std::size_t terms, CounterRng& rng) {
  SeparableSpec spec;
  double total = 0.0;
  for (std::size_t k = 0; k < terms; ++k) {
    const double w = -std::log(1.0 - rng.uniform());  // flat Dirichlet
    spec.weights.push_back(w);
    total += w;
    auto factor = [&] {
      return rng.uniform() < 0.5 ? random_pure_state(local_dim, rng) : ginibre_state(local_dim, rng);
    };
    DensityMatrix a = factor();
    DensityMatrix b = factor();
    spec.factors.emplace_back(std::move(a), std::move(b));
  }
  for (double& w : spec.weights) w /= total;
  return spec;
}

SeparableSpec random_anticorrelated_qubit_spec(std::size_t terms, CounterRng& rng) {
  SeparableSpec spec;
  double total = 0.0;
  for (std::size_t k = 0; k < terms; ++k) {
    const double w = -std::log(1.0 - rng.uniform());
    spec.weights.push_back(w);
    total += w;
    const double cz = 1.0 - 2.0 * rng.uniform();
    const double az = 2.0 * std::numbers::pi * rng.uniform();
    const double len = rng.uniform() < 0.5 ? 1.0 : std::cbrt(rng.uniform());
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const Vec3 r{len * sz * std::cos(az), len * sz * std::sin(az), len * cz};
    spec.factors.emplace_back(DensityMatrix(bloch_assemble({r, std::nullopt, std::nullopt})),
                              DensityMatrix(bloch_assemble({Vec3{-r[0], -r[1], -r[2]}, std::nullopt, std::nullopt})));
  }
  for (double& w : spec.weights) w /= total;
  return spec;
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return frobenius_norm(a.matrix() - b.matrix());
}

}  // namespace spintomo
