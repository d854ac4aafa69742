#pragma once

#include "oqw/channels.hpp"
#include "oqw/graph.hpp"
#include "oqw/walk.hpp"

#include <vector>

namespace oqw::oracle {

/// One transition operator B_(u,v) = C_(u,v) (x) |v><u| per arc, acting on
/// coin (x) position space of dimension n^2. Flattened index: coin * n + position.
struct SuperOp {
  std::size_t n = 0;
  std::vector<Arc> arcs;
  std::vector<ComplexMatrix> kraus;
};

/// |v><u| on position space.
ComplexMatrix shift(std::size_t n, Vertex from, Vertex to);

SuperOp build_superop(const DirectedWalkGraph& g, const CoinSet& cs);

/// || sum_k B_k^dagger B_k - I ||_max.
double completeness_residual(const SuperOp& so);

/// sum_k B_k rho B_k^dagger.
ComplexMatrix apply(const SuperOp& so, const ComplexMatrix& rho_full);

/// sum_u rho_u (x) |u><u|.
ComplexMatrix embed(const WalkerState& s);

/// Inverse of embed. Throws if an inter-block entry exceeds 1e-12.
WalkerState extract(const ComplexMatrix& m);

/// Largest inter-block magnitude of an n^2 x n^2 matrix.
double off_block_magnitude(const ComplexMatrix& m);

/// max entrywise difference between the blockwise step and the full Kraus sum.
double step_discrepancy(const WalkerState& s, const CoinSet& cs, const DirectedWalkGraph& g);

}  // namespace oqw::oracle
