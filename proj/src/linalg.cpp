#include "oqw/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace oqw {

namespace {

std::atomic<double> g_tolerance{1e-10};

constexpr double kNegativeEigenvalueLimit = -1e-8;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw DimensionError(msg.str());
  }
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionError(std::string(op) + ": matrix is not square");
  }
}

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

double tolerance() { return g_tolerance.load(); }

void set_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(tol);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::ones(std::size_t n) {
  return ComplexMatrix(n, n, std::vector<Complex>(n * n, Complex{1.0, 0.0}));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: inner dimensions differ (" << a.cols() << " vs " << b.rows() << ")";
    throw DimensionError(msg.str());
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }

ComplexMatrix scale(const ComplexMatrix& m, Complex s) { return s * m; }

Complex trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  Complex t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  }
  return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& m) {
  // (a (a m)^dagger)^dagger keeps a on the left, where matmul skips its zeros.
  return adjoint(matmul(a, adjoint(matmul(a, m))));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const auto& x : m.entries()) worst = std::max(worst, std::abs(x));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& x : m.entries()) sum += std::norm(x);
  return std::sqrt(sum);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && max_abs_diff(m, adjoint(m)) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  const auto id = ComplexMatrix::identity(m.rows());
  return max_abs_diff(adjoint(m) * m, id) <= tol && max_abs_diff(m * adjoint(m), id) <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

ComplexMatrix weyl(std::size_t n, long long u, long long v) {
  if (n == 0) throw std::invalid_argument("weyl: order must be at least 1");
  const auto order = static_cast<long long>(n);
  const auto phase_index = ((u % order) + order) % order;
  const auto shift = ((v % order) + order) % order;
  ComplexMatrix out(n, n);
  for (long long k = 0; k < order; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * phase_index) /
                         static_cast<double>(order);
    out(static_cast<std::size_t>(k), static_cast<std::size_t>((k + shift) % order)) =
        std::polar(1.0, angle);
  }
  return out;
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  const auto n = static_cast<Eigen::Index>(m.rows());
  HermitianEigen result;
  if (n == 0) return result;

  Eigen::Map<const EigenMatrix> raw(m.entries().data(), n, n);
  const EigenMatrix herm = (raw + raw.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }

  // Eigen returns ascending order.
  result.eigenvalues.resize(static_cast<std::size_t>(n));
  result.eigenvectors = ComplexMatrix(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = n - 1 - j;
    result.eigenvalues[static_cast<std::size_t>(j)] = solver.eigenvalues()(src);
    for (Eigen::Index i = 0; i < n; ++i)
      result.eigenvectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          solver.eigenvectors()(i, src);
  }
  return result;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  if (n == 0) return out;
  // Eigenvalues within the solver's rounding floor are zero; their square
  // roots would otherwise inject O(sqrt(eps)) noise.
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) *
                       std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < kNegativeEigenvalueLimit) {
      std::ostringstream msg;
      msg << "psd_sqrt: input is not positive semidefinite (eigenvalue " << lambda << ")";
      throw std::domain_error(msg.str());
    }
    const double root = lambda <= floor ? 0.0 : std::sqrt(lambda);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = eig.eigenvectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.eigenvectors(j, k));
    }
  }
  // Re-symmetrize to remove rounding asymmetry.
  return 0.5 * (out + adjoint(out));
}

double min_eigenvalue(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  return eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
}

std::string to_string(const ComplexMatrix& m) {
  std::ostringstream out;
  out.precision(6);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ", ";
      out << m(i, j);
    }
    out << (i + 1 == m.rows() ? "]]" : "]\n");
  }
  return out.str();
}

}  // namespace oqw
