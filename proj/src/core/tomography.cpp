#include "spintomo/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "spintomo/errors.hpp"
#include "spintomo/rng.hpp"

namespace spintomo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::array<int, 2> kQubitLabels{+1, -1};
constexpr std::array<int, 3> kQutritLabels{+1, 0, -1};

double wrap_two_pi(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

std::size_t label_index(Spin s, int m) {
  auto labels = outcome_labels(s);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == m) return i;
  throw DomainError("projection label " + std::to_string(m) + " invalid for spin " +
                    (s == Spin::half ? "1/2" : "1"));
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

ComplexMatrix n_dot_j(const Direction& n) {
  static const std::array<ComplexMatrix, 3> j = spin1_generators();
  const Vec3& c = n.cartesian();
  return j[0] * Complex{c[0]} + j[1] * Complex{c[1]} + j[2] * Complex{c[2]};
}

// Projector matrices of every outcome for each party, in label order.
std::vector<std::vector<ComplexMatrix>> party_projectors(Spin spin, std::span<const Direction> dirs) {
  std::vector<std::vector<ComplexMatrix>> out;
  out.reserve(dirs.size());
  for (const Direction& n : dirs) {
    std::vector<ComplexMatrix> per;
    for (int m : outcome_labels(spin)) per.push_back(dequantizer(spin, m, n).matrix);
    out.push_back(std::move(per));
  }
  return out;
}

// tr(rho (x)_p P_p) without forming the Kronecker product.
double trace_against_product(const ComplexMatrix& rho, std::size_t local_dim,
                             std::span<const ComplexMatrix* const> factors) {
  const std::size_t parties = factors.size();
  const std::size_t dim = rho.rows();
  Complex sum{};
  std::array<std::size_t, 8> ri{};
  std::array<std::size_t, 8> ci{};
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t p = 0, rr = r; p < parties; ++p, rr /= local_dim) ri[parties - 1 - p] = rr % local_dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex rho_rc = rho(r, c);
      if (rho_rc == Complex{}) continue;
      for (std::size_t p = 0, cc = c; p < parties; ++p, cc /= local_dim) ci[parties - 1 - p] = cc % local_dim;
      Complex prod{1.0};
      for (std::size_t p = 0; p < parties; ++p) prod *= (*factors[p])(ci[p], ri[p]);
      sum += rho_rc * prod;
    }
  }
  return sum.real();
}

bool same_axis(const Direction& a, const Direction& b) {
  return std::abs(std::abs(a.dot(b)) - 1.0) < 1e-9;
}

std::string format_direction(const Direction& d) {
  std::ostringstream os;
  os.precision(6);
  os << "(theta=" << d.theta() << ", phi=" << d.phi() << ")";
  return os.str();
}

// Orthonormal traceless Hermitian basis (generalized Gell-Mann matrices
// scaled to tr(G_a G_b) = delta_ab).
std::vector<ComplexMatrix> traceless_basis(std::size_t dim) {
  using namespace std::complex_literals;
  std::vector<ComplexMatrix> basis;
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      ComplexMatrix s(dim, dim);
      s(j, k) = r;
      s(k, j) = r;
      basis.push_back(std::move(s));
      ComplexMatrix a(dim, dim);
      a(j, k) = -1i * r;
      a(k, j) = 1i * r;
      basis.push_back(std::move(a));
    }
  for (std::size_t l = 1; l < dim; ++l) {
    ComplexMatrix d(dim, dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) d(j, j) = scale;
    d(l, l) = -static_cast<double>(l) * scale;
    basis.push_back(std::move(d));
  }
  return basis;
}

}  // namespace

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("direction angles must be finite");
  double t = wrap_two_pi(theta);
  double p = phi;
  if (t > std::numbers::pi) {
    t = kTwoPi - t;
    p += std::numbers::pi;
  }
  theta_ = t;
  phi_ = wrap_two_pi(p);
  cartesian_ = {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

Direction Direction::from_vector(const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("direction vector must be finite and nonzero");
  const Vec3 u{v[0] / r, v[1] / r, v[2] / r};
  const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
  const double phi = wrap_two_pi(std::atan2(u[1], u[0]));
  return Direction(theta, phi, u);
}

double Direction::dot(const Direction& other) const { return spintomo::dot(cartesian_, other.cartesian_); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::size_t spin_dimension(Spin s) { return s == Spin::half ? 2 : 3; }

Spin spin_for_dimension(std::size_t dim) {
  if (dim == 2) return Spin::half;
  if (dim == 3) return Spin::one;
  throw DomainError("local dimension " + std::to_string(dim) + " is not a qubit or qutrit");
}

SystemLayout layout_for_dimension(std::size_t dim) {
  for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
    std::size_t n = 0;
    std::size_t v = dim;
    while (v > 1 && v % d == 0) {
      v /= d;
      ++n;
    }
    if (v == 1 && n >= 1) return {spin_for_dimension(d), n};
  }
  throw DomainError("dimension " + std::to_string(dim) + " is not a power of 2 or 3");
}

std::span<const int> outcome_labels(Spin s) {
  if (s == Spin::half) return kQubitLabels;
  return kQutritLabels;
}

std::vector<int> outcome_tuple(Spin spin, std::size_t parties, std::size_t index) {
  const auto labels = outcome_labels(spin);
  const std::size_t d = labels.size();
  std::vector<int> out(parties);
  for (std::size_t p = parties; p-- > 0;) {
    out[p] = labels[index % d];
    index /= d;
  }
  return out;
}

std::size_t outcome_index(Spin spin, std::span<const int> labels) {
  std::size_t idx = 0;
  for (int m : labels) idx = idx * spin_dimension(spin) + label_index(spin, m);
  return idx;
}

ComplexMatrix rotation_spin_half(double theta, double phi, double psi) {
  using namespace std::complex_literals;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double sum = (phi + psi) / 2.0;
  const double diff = (phi - psi) / 2.0;
  return ComplexMatrix{{c * std::exp(1i * sum), s * std::exp(1i * diff)},
                       {-s * std::exp(-1i * diff), c * std::exp(-1i * sum)}};
}

Dequantizer dequantizer_qubit(int m, const Direction& n) {
  if (m != 1 && m != -1) throw DomainError("qubit projection label must be +1 or -1, got " + std::to_string(m));
  using namespace std::complex_literals;
  const Vec3& c = n.cartesian();
  const double h = 0.5 * m;
  ComplexMatrix p{{0.5 + h * c[2], h * (c[0] - 1i * c[1])}, {h * (c[0] + 1i * c[1]), 0.5 - h * c[2]}};
  return {Spin::half, m, n, std::move(p)};
}

Dequantizer dequantizer_qutrit(int m, const Direction& n) {
  if (m < -1 || m > 1) throw DomainError("qutrit projection label must be -1, 0 or +1, got " + std::to_string(m));
  const ComplexMatrix nj = n_dot_j(n);
  const double m2 = static_cast<double>(m * m);
  ComplexMatrix p = ComplexMatrix::identity(3) * Complex{1.0 - m2};
  p += nj * Complex{0.5 * m};
  p += matmul(nj, nj) * Complex{1.5 * m2 - 1.0};
  return {Spin::one, m, n, std::move(p)};
}

Dequantizer dequantizer(Spin spin, int m, const Direction& n) {
  return spin == Spin::half ? dequantizer_qubit(m, n) : dequantizer_qutrit(m, n);
}

Tomogram::Tomogram(Spin spin, std::vector<Direction> directions, std::vector<double> probabilities)
    : spin_(spin), directions_(std::move(directions)), probabilities_(std::move(probabilities)) {
  if (directions_.empty()) throw ShapeError("tomogram needs at least one party");
  const std::size_t expected = ipow(spin_dimension(spin_), directions_.size());
  if (probabilities_.size() != expected) {
    throw ShapeError("tomogram has " + std::to_string(probabilities_.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  double total = 0.0;
  for (double& p : probabilities_) {
    if (!std::isfinite(p)) throw InvariantError("tomogram entry is not finite");
    if (p < 0.0) {
      if (p < -kNegativeClamp) throw InvariantError("tomogram entry " + std::to_string(p) + " is negative");
      p = 0.0;
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw InvariantError("tomogram entries sum to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<int> Tomogram::labels_at(std::size_t index) const {
  if (index >= probabilities_.size()) throw ShapeError("tomogram index out of range");
  return outcome_tuple(spin_, parties(), index);
}

std::size_t Tomogram::index_of(std::span<const int> labels) const {
  if (labels.size() != parties()) {
    throw ShapeError("expected " + std::to_string(parties()) + " labels, got " + std::to_string(labels.size()));
  }
  return outcome_index(spin_, labels);
}

double Tomogram::probability(std::span<const int> labels) const { return probabilities_[index_of(labels)]; }

std::vector<double> Tomogram::marginal(std::size_t party) const {
  if (party >= parties()) throw ShapeError("party index out of range");
  const std::size_t d = outcomes_per_party();
  const std::size_t stride = ipow(d, parties() - 1 - party);
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < probabilities_.size(); ++i) out[(i / stride) % d] += probabilities_[i];
  return out;
}

Tomogram tomogram_single(const DensityMatrix& rho, const Direction& n) {
  const Direction dirs[] = {n};
  return tomogram_multi(rho, dirs);
}

Tomogram tomogram_multi(const DensityMatrix& rho, std::span<const Direction> dirs) {
  if (dirs.empty() || dirs.size() > 8) throw ShapeError("tomogram needs between 1 and 8 directions");
  std::size_t local = 0;
  for (std::size_t d : {std::size_t{2}, std::size_t{3}})
    if (ipow(d, dirs.size()) == rho.dim()) local = d;
  if (local == 0) {
    throw ShapeError("state dimension " + std::to_string(rho.dim()) + " does not match " +
                     std::to_string(dirs.size()) + " qubit or qutrit parties");
  }
  const Spin spin = spin_for_dimension(local);
  const auto projectors = party_projectors(spin, dirs);
  const std::size_t parties = dirs.size();
  const std::size_t outcomes = ipow(local, parties);

  std::vector<double> probs(outcomes);
  std::vector<const ComplexMatrix*> factors(parties);
  for (std::size_t o = 0; o < outcomes; ++o) {
    for (std::size_t p = 0, oo = o; p < parties; ++p, oo /= local)
      factors[parties - 1 - p] = &projectors[parties - 1 - p][oo % local];
    probs[o] = trace_against_product(rho.matrix(), local, factors);
  }
  return Tomogram(spin, std::vector<Direction>(dirs.begin(), dirs.end()), std::move(probs));
}

double two_qubit_tomo_closed(const BlochData& bloch, int m1, int m2, const Direction& n1,
                             const Direction& n2) {
  if ((m1 != 1 && m1 != -1) || (m2 != 1 && m2 != -1)) throw DomainError("qubit labels must be +1 or -1");
  if (!bloch.y || !bloch.z) throw DomainError("two_qubit_tomo_closed needs two-qubit Bloch data");
  const Vec3& a = n1.cartesian();
  const Vec3& b = n2.cartesian();
  double corr = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) corr += a[i] * (*bloch.z)[i][j] * b[j];
  return 0.25 * (1.0 + m1 * dot(a, bloch.x) + m2 * dot(b, *bloch.y) + m1 * m2 * corr);
}

double werner_qutrit_tomo_closed(double phi, int m1, int m2, const Direction& n1,
                                 const Direction& n2) {
  if (!(phi >= -1.0 && phi <= 1.0)) throw DomainError("Werner parameter phi outside [-1, 1]");
  if (m1 < -1 || m1 > 1 || m2 < -1 || m2 > 1) throw DomainError("qutrit labels must be -1, 0 or +1");
  const double a = m1 * m1;
  const double b = m2 * m2;
  const double c = n1.dot(n2);
  const double bracket = 3.0 * (1.0 - a) * (1.0 - b) + (1.0 - a) * (3.0 * b - 2.0) +
                         (1.0 - b) * (3.0 * a - 2.0) + 0.5 * m1 * m2 * c +
                         (1.5 * a - 1.0) * (1.5 * b - 1.0) * (1.0 + c * c);
  return (3.0 - phi) / 24.0 + (3.0 * phi - 1.0) / 24.0 * bracket;
}

bool is_factorized(const Tomogram& t, double tol) {
  if (t.parties() != 2) {
    throw DomainError("is_factorized needs a two-party tomogram, got " + std::to_string(t.parties()));
  }
  const auto m1 = t.marginal(0);
  const auto m2 = t.marginal(1);
  const std::size_t d = t.outcomes_per_party();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (std::abs(t.probabilities()[i * d + j] - m1[i] * m2[j]) > tol) return false;
  return true;
}

std::vector<Direction> fibonacci_directions(std::size_t n) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Direction> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden_angle * static_cast<double>(i);
    out.push_back(Direction::from_vector({r * std::cos(a), r * std::sin(a), z}));
  }
  return out;
}

std::vector<Direction> random_directions(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Direction> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = std::acos(1.0 - 2.0 * rng.uniform());
    out.emplace_back(theta, 2.0 * std::numbers::pi * rng.uniform());
  }
  return out;
}

std::vector<Direction> default_reconstruction_directions(Spin spin) {
  if (spin == Spin::half) return {Direction::z_axis(), Direction::x_axis(), Direction::y_axis()};
  return fibonacci_directions(5);
}

std::vector<std::vector<Direction>> default_reconstruction_settings(Spin spin, std::size_t parties) {
  const auto per = default_reconstruction_directions(spin);
  std::vector<std::vector<Direction>> settings{{}};
  for (std::size_t p = 0; p < parties; ++p) {
    std::vector<std::vector<Direction>> next;
    for (const auto& prefix : settings)
      for (const Direction& d : per) {
        auto s = prefix;
        s.push_back(d);
        next.push_back(std::move(s));
      }
    settings = std::move(next);
  }
  return settings;
}

std::vector<Tomogram> default_reconstruction_tomograms(const DensityMatrix& rho) {
  const SystemLayout layout = layout_for_dimension(rho.dim());
  std::vector<Tomogram> out;
  for (const auto& setting : default_reconstruction_settings(layout.spin, layout.parties))
    out.push_back(tomogram_multi(rho, setting));
  return out;
}

Reconstruction reconstruct(std::span<const Tomogram> samples, std::size_t dim) {
  if (samples.empty()) throw IllPosedError("reconstruction needs at least one tomogram");
  const SystemLayout layout = layout_for_dimension(dim);
  for (const Tomogram& t : samples) {
    if (t.spin() != layout.spin || t.parties() != layout.parties) {
      throw ShapeError("tomogram layout does not match target dimension " + std::to_string(dim));
    }
  }

  const auto basis = traceless_basis(dim);
  const std::size_t local = spin_dimension(layout.spin);
  std::size_t rows = 0;
  for (const Tomogram& t : samples) rows += t.size();

  RealMatrix design(rows, basis.size());
  std::vector<double> rhs(rows);
  std::vector<double> observed(rows);
  std::size_t row = 0;
  for (const Tomogram& t : samples) {
    const auto projectors = party_projectors(t.spin(), t.directions());
    for (std::size_t o = 0; o < t.size(); ++o, ++row) {
      std::vector<std::size_t> idx(layout.parties);
      for (std::size_t q = layout.parties, oo = o; q-- > 0; oo /= local) idx[q] = oo % local;
      ComplexMatrix p = ComplexMatrix::identity(1);
      for (std::size_t q = 0; q < layout.parties; ++q) p = kron(p, projectors[q][idx[q]]);
      for (std::size_t k = 0; k < basis.size(); ++k) design(row, k) = trace_product(basis[k], p).real();
      observed[row] = t.probabilities()[o];
      rhs[row] = observed[row] - 1.0 / static_cast<double>(dim);
    }
  }

  const LeastSquaresSolution sol = solve_least_squares(design, rhs, 1e-8);
  if (sol.rank < basis.size()) {
    std::ostringstream msg;
    msg << "reconstruction is ill-posed: design rank " << sol.rank << " < " << basis.size()
        << " unknowns";
    const std::size_t need = layout.spin == Spin::half ? 3 : 5;
    for (std::size_t q = 0; q < layout.parties; ++q) {
      std::vector<Direction> distinct;
      for (const Tomogram& t : samples) {
        const Direction& d = t.directions()[q];
        if (std::none_of(distinct.begin(), distinct.end(), [&](const Direction& e) { return same_axis(d, e); }))
          distinct.push_back(d);
      }
      msg << "; party " << q << " measured " << distinct.size() << " distinct axes (need >= " << need
          << " in general position):";
      for (const Direction& d : distinct) msg << ' ' << format_direction(d);
    }
    throw IllPosedError(msg.str());
  }

  ComplexMatrix rho = ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)};
  for (std::size_t k = 0; k < basis.size(); ++k) rho += basis[k] * Complex{sol.x[k]};
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < dim; ++j) rho(j, i) = std::conj(rho(i, j));
  }

  double residual = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    double pred = 1.0 / static_cast<double>(dim);
    for (std::size_t k = 0; k < basis.size(); ++k) pred += design(r, k) * sol.x[k];
    residual += (pred - observed[r]) * (pred - observed[r]);
  }

  bool projected = false;
  const HermitianEigen eig = eigh(rho);
  if (eig.values.front() < -DensityMatrix::kPsdTol) {
    projected = true;
    double total = 0.0;
    std::vector<double> clipped(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      clipped[k] = std::max(0.0, eig.values[k]);
      total += clipped[k];
    }
    ComplexMatrix fixed(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const double w = clipped[k] / total;
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          fixed(i, j) += w * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      fixed(i, i) = fixed(i, i).real();
      for (std::size_t j = i + 1; j < dim; ++j) fixed(j, i) = std::conj(fixed(i, j));
    }
    rho = std::move(fixed);
  }

  return {DensityMatrix(std::move(rho)), projected, std::sqrt(residual), sol.rank};
}

}  // namespace spintomo
