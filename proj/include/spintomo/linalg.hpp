#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spintomo {

using Complex = std::complex<double>;

// Largest supported row/column count: two qutrits tensor two qutrits.
inline constexpr std::size_t kMaxDimension = 81;

// Default Hermiticity tolerance (max-entry norm).
inline constexpr double kHermitianTol = 1e-10;

// Dense row-major complex matrix for the small operators used throughout
// the library (2x2 up to 81x81). Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// Kronecker product; the first factor indexes blocks.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
ComplexMatrix dagger(const ComplexMatrix& a);

// tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

// Eigenpairs of a Hermitian matrix, eigenvalues ascending; column k of
// `vectors` is the unit eigenvector for values[k].
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm drops
// below 1e-13 (relative to max(1, |A|_F)). Throws DomainError on
// non-Hermitian input.
HermitianEigen eigh(const ComplexMatrix& a);

// True iff every eigenvalue >= -tol. Throws DomainError when `a` is not
// Hermitian within max(tol, kHermitianTol).
bool is_psd(const ComplexMatrix& a, double tol);

// Dense real matrix, row-major; only used by least-squares fitting.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct LeastSquaresSolution {
  std::vector<double> x;
  std::vector<double> singular_values;  // descending
  std::size_t rank = 0;
};

// Minimum-norm least-squares solution of A x = b via one-sided Jacobi SVD.
// Singular values below rel_tol * sigma_max count as zero.
LeastSquaresSolution solve_least_squares(const RealMatrix& a, std::span<const double> b,
                                         double rel_tol);

}  // namespace spintomo
