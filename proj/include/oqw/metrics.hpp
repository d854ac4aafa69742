#pragma once

#include "oqw/walk.hpp"

#include <cstddef>
#include <vector>

namespace oqw {

/// Per-vertex probabilities Re tr(rho_u).
std::vector<double> probabilities(const WalkerState& s);

/// l1-norm coherence of the full composite state. Inter-block entries
/// vanish, so this is the sum of off-diagonal magnitudes of all blocks.
double coherence_l1(const WalkerState& s);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two
/// block-diagonal states, evaluated block by block with matrix square roots.
double fidelity(const WalkerState& rho, const WalkerState& sigma);

/// Fidelity against a reference state. When the reference is pure
/// (a single rank-1 block |psi><psi|) this is <psi|sigma_u|psi>; otherwise
/// it falls back to fidelity().
class FidelityReference {
 public:
  explicit FidelityReference(const WalkerState& reference);

  double operator()(const WalkerState& s) const;
  bool is_pure() const { return pure_; }

 private:
  WalkerState reference_;
  bool pure_ = false;
  Vertex support_ = 0;
  std::vector<Complex> psi_;
};

double fidelity_to_initial(const WalkerState& s0, const WalkerState& sk);

struct MetricSeries {
  std::size_t steps = 0;
  std::vector<std::vector<double>> probabilities;  // (steps + 1) x n
  std::vector<double> coherence;
  std::vector<double> fidelity;
};

/// Metrics of every snapshot; fidelity is always against snapshots[0].
MetricSeries compute_series(const std::vector<WalkerState>& snapshots);

}  // namespace oqw
