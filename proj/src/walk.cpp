#include "oqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace oqw {

WalkerState::WalkerState(std::vector<ComplexMatrix> blocks) : blocks_(std::move(blocks)) {
  const std::size_t n = blocks_.size();
  if (n == 0) throw DimensionError("WalkerState: no blocks");
  for (const auto& b : blocks_) {
    if (b.rows() != n || b.cols() != n) {
      throw DimensionError("WalkerState: every block must be n x n with n = vertex count");
    }
  }
}

StateResiduals check_state(const WalkerState& s) {
  Complex total{};
  double herm = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& b : s.blocks()) {
    total += trace(b);
    herm = std::max(herm, max_abs_diff(b, adjoint(b)));
    min_eig = std::min(min_eig, min_eigenvalue(b));
  }
  return {std::abs(total.real() - 1.0), std::abs(total.imag()), herm, min_eig};
}

WalkerState initial_state(std::size_t n, Vertex start) {
  if (n == 0) throw std::invalid_argument("initial_state: dimension must be at least 1");
  if (start >= n) {
    throw std::out_of_range("initial_state: start vertex " + std::to_string(start) +
                            " is outside 0.." + std::to_string(n - 1));
  }
  std::vector<ComplexMatrix> blocks(n, ComplexMatrix(n, n));
  blocks[start] = scale(ComplexMatrix::ones(n), 1.0 / static_cast<double>(n));
  return WalkerState(std::move(blocks));
}

WalkerState step(const WalkerState& s, const CoinSet& cs, const DirectedWalkGraph& g) {
  const std::size_t n = s.dimension();
  if (cs.dimension() != n || g.order() != n) {
    throw DimensionError("step: state, coins and graph must share the vertex count");
  }
  std::vector<ComplexMatrix> next;
  next.reserve(n);
  for (Vertex u = 0; u < n; ++u) {
    ComplexMatrix acc(n, n);
    for (const Arc& a : g.in_arcs(u)) {
      const auto& rho = s.block(a.source);
      if (max_abs(rho) == 0.0) continue;
      acc += conjugate_by(cs.coin(a), rho);
    }
    next.push_back(std::move(acc));
  }
  return WalkerState(std::move(next));
}

CoinSet coins_for_step(const RunConfig& cfg, const DirectedWalkGraph& g, std::size_t k) {
  return build_coins(g, cfg.channel, static_cast<double>(k + 1) * cfg.dt);
}

std::vector<WalkerState> run(const RunConfig& cfg) {
  validate(cfg.channel);
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  const DirectedWalkGraph g(cfg.graph);
  std::vector<WalkerState> snapshots;
  snapshots.reserve(cfg.steps + 1);
  snapshots.push_back(initial_state(g.order(), cfg.start));
  const bool time_dependent = std::holds_alternative<AdcParams>(cfg.channel);
  std::optional<CoinSet> fixed;
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    if (time_dependent || !fixed) fixed = coins_for_step(cfg, g, k);
    snapshots.push_back(step(snapshots.back(), *fixed, g));
  }
  return snapshots;
}

}  // namespace oqw
