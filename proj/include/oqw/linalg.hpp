#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqw {

using Complex = std::complex<double>;

/// Raised when operand shapes do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Absolute tolerance used by the library's validity checks (default 1e-10).
double tolerance();
void set_tolerance(double tol);

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  /// All-ones matrix J_n.
  static ComplexMatrix ones(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<Complex>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Complex>& entries() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& m, Complex s);
Complex trace(const ComplexMatrix& m);
/// Kronecker product; (a.rows*b.rows) x (a.cols*b.cols).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a * m * a^dagger without forming the adjoint explicitly.
ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& m);

/// Entrywise max |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = tolerance());
bool is_unitary(const ComplexMatrix& m, double tol = tolerance());
bool is_psd(const ComplexMatrix& m, double tol = tolerance());

/// Generalized Pauli operator of order n:
///   U_(u,v) = sum_k exp(2 pi i k u / n) |k><(k+v) mod n|.
/// Indices are reduced mod n.
ComplexMatrix weyl(std::size_t n, long long u, long long v);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, unitary
};

/// Eigendecomposition of the Hermitian part (m + m^dagger)/2.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// (-1e-8, 0) and those below the rounding floor n * 4 eps * max|lambda|
/// are taken as zero; anything below -1e-8 throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

std::string to_string(const ComplexMatrix& m);

}  // namespace oqw
