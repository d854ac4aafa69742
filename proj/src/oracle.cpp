#include "oqw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oqw::oracle {

namespace {

constexpr double kOffBlockLimit = 1e-12;

std::size_t isqrt_exact(std::size_t d) {
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
  if (n * n != d) throw DimensionError("expected an n^2 x n^2 matrix");
  return n;
}

}  // namespace

ComplexMatrix shift(std::size_t n, Vertex from, Vertex to) {
  ComplexMatrix s(n, n);
  s(to, from) = 1.0;
  return s;
}

SuperOp build_superop(const DirectedWalkGraph& g, const CoinSet& cs) {
  if (cs.dimension() != g.order()) throw DimensionError("build_superop: dimension mismatch");
  SuperOp so;
  so.n = g.order();
  for (const Arc& a : g.arcs()) {
    so.arcs.push_back(a);
    so.kraus.push_back(kron(cs.coin(a), shift(so.n, a.source, a.target)));
  }
  return so;
}

double completeness_residual(const SuperOp& so) {
  const std::size_t d = so.n * so.n;
  ComplexMatrix sum(d, d);
  for (const auto& b : so.kraus) sum += adjoint(b) * b;
  return max_abs_diff(sum, ComplexMatrix::identity(d));
}

ComplexMatrix apply(const SuperOp& so, const ComplexMatrix& rho_full) {
  const std::size_t d = so.n * so.n;
  if (rho_full.rows() != d || rho_full.cols() != d) {
    throw DimensionError("apply: state must be n^2 x n^2");
  }
  ComplexMatrix out(d, d);
  for (const auto& b : so.kraus) out += conjugate_by(b, rho_full);
  return out;
}

ComplexMatrix embed(const WalkerState& s) {
  const std::size_t n = s.dimension();
  ComplexMatrix full(n * n, n * n);
  for (Vertex u = 0; u < n; ++u) {
    const auto& b = s.block(u);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) full(i * n + u, j * n + u) = b(i, j);
  }
  return full;
}

double off_block_magnitude(const ComplexMatrix& m) {
  const std::size_t n = isqrt_exact(m.rows());
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r % n != c % n) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

WalkerState extract(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("extract: matrix is not square");
  const std::size_t n = isqrt_exact(m.rows());
  if (const double off = off_block_magnitude(m); off > kOffBlockLimit) {
    throw std::domain_error("extract: inter-block entry of magnitude " + std::to_string(off));
  }
  std::vector<ComplexMatrix> blocks(n, ComplexMatrix(n, n));
  for (Vertex u = 0; u < n; ++u)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) blocks[u](i, j) = m(i * n + u, j * n + u);
  return WalkerState(std::move(blocks));
}

double step_discrepancy(const WalkerState& s, const CoinSet& cs, const DirectedWalkGraph& g) {
  const auto blockwise = step(s, cs, g);
  const auto full = extract(apply(build_superop(g, cs), embed(s)));
  double worst = 0.0;
  for (Vertex u = 0; u < s.dimension(); ++u)
    worst = std::max(worst, max_abs_diff(blockwise.block(u), full.block(u)));
  return worst;
}

}  // namespace oqw::oracle
