#pragma once

#include "oqw/channels.hpp"
#include "oqw/graph.hpp"
#include "oqw/linalg.hpp"

#include <cstddef>
#include <vector>

namespace oqw {

/// Block-diagonal walker state sum_u rho_u (x) |u><u|: one n x n coin block
/// per vertex, tr(rho_u) being the probability of finding the walker at u.
class WalkerState {
 public:
  explicit WalkerState(std::vector<ComplexMatrix> blocks);

  std::size_t dimension() const { return blocks_.size(); }
  const ComplexMatrix& block(Vertex u) const { return blocks_.at(u); }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }

  bool operator==(const WalkerState&) const = default;

 private:
  std::vector<ComplexMatrix> blocks_;
};

/// How far a state is from being a valid density operator.
struct StateResiduals {
  double trace_error;      // |sum_u Re tr(rho_u) - 1|
  double trace_imag;       // |sum_u Im tr(rho_u)|
  double hermiticity;      // max_u ||rho_u - rho_u^dagger||_max
  double min_eigenvalue;   // min over blocks
};

StateResiduals check_state(const WalkerState& s);

/// J_n / n on the start vertex, zero elsewhere.
WalkerState initial_state(std::size_t n, Vertex start = 0);

/// rho_u' = sum over arcs (v, u) of C_(v,u) rho_v C_(v,u)^dagger.
WalkerState step(const WalkerState& s, const CoinSet& cs, const DirectedWalkGraph& g);

struct RunConfig {
  Graph graph = path(1);
  ChannelSpec channel;
  std::size_t steps = 30;
  double dt = 1.0;  // time per step, used by ADC only
  Vertex start = 0;
};

/// Coins applied on the transition k -> k+1, evaluated at t = (k+1) dt.
CoinSet coins_for_step(const RunConfig& cfg, const DirectedWalkGraph& g, std::size_t k);

/// Snapshots 0..steps, including the initial state.
std::vector<WalkerState> run(const RunConfig& cfg);

}  // namespace oqw
