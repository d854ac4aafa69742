#pragma once

#include "oqw/graph.hpp"
#include "oqw/linalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oqw {

class ChannelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-Markovian amplitude damping: gamma is the spontaneous emission rate,
/// g the spectral width of the system-environment coupling.
struct AdcParams {
  double gamma = 500.0;
  double g = 0.01;
};

/// Non-Markovian dephasing with strength eta and frequency omega.
struct NmdParams {
  double p = 0.5;
  double eta = 0.5;
  double omega = 50.0;
};

/// Non-Markovian depolarizing with mixing p and scale alpha.
struct DepolParams {
  double p = 0.5;
  double alpha = 1.0;
};

using ChannelSpec = std::variant<AdcParams, NmdParams, DepolParams>;

std::string channel_name(const ChannelSpec& spec);

/// Throws ChannelError if the parameters leave the supported domain.
void validate(const ChannelSpec& spec);

/// lambda(t) = 1 - e^{-gt} Re{[(g/l) sinh(lt/2) + cosh(lt/2)]^2},
/// l = sqrt(g^2 - 2 gamma g) taken in complex arithmetic.
double lambda_adc(double t, double gamma, double g);

/// kappa(p) = p (1 + eta (1-2p) sin(omega p)) / (1 + eta (1-2p)).
double kappa_nmd(double p, double eta, double omega);

struct DepolCoefficients {
  double lambda1;
  double lambda2;
};

/// Lambda1 = -alpha p, Lambda2 = alpha (1 - p).
DepolCoefficients depol_coefficients(double p, double alpha);

/// Per-arc coin operators of one channel on a walk graph.
class CoinSet {
 public:
  CoinSet(std::size_t n, std::map<Arc, ComplexMatrix> coins);

  std::size_t dimension() const { return n_; }
  const ComplexMatrix& coin(Arc a) const;
  const ComplexMatrix& coin(Vertex source, Vertex target) const { return coin(Arc{source, target}); }
  bool contains(Arc a) const { return coins_.contains(a); }
  const std::map<Arc, ComplexMatrix>& coins() const { return coins_; }
  /// Vertices that have a loop coin.
  std::vector<Vertex> sources() const;

  /// Returns a copy with one coin replaced; used to corrupt sets in tests.
  CoinSet with_coin(Arc a, ComplexMatrix m) const;

 private:
  std::size_t n_;
  std::map<Arc, ComplexMatrix> coins_;
};

CoinSet build_coins_adc(const DirectedWalkGraph& g, double lambda);
CoinSet build_coins_nmd(const DirectedWalkGraph& g, double kappa);
CoinSet build_coins_depol(const DirectedWalkGraph& g, double p, double alpha);

/// Coins for a channel at time t. NMD and depolarizing coins ignore t.
CoinSet build_coins(const DirectedWalkGraph& g, const ChannelSpec& spec, double t);

/// max_u || sum_{arcs out of u} C^dagger C - I ||_max.
double verify_completeness(const CoinSet& cs);

}  // namespace oqw
