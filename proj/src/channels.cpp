#include "oqw/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oqw {

namespace {

constexpr double kImagResidueLimit = 1e-12;
constexpr double kRangeSlack = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_value(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

void require_weight(double w, const char* name) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ChannelError(std::string(name) + " must lie in [0, 1], got " + format_value(w));
  }
}

}  // namespace

std::string channel_name(const ChannelSpec& spec) {
  return std::visit(Overloaded{[](const AdcParams&) { return std::string("adc"); },
                               [](const NmdParams&) { return std::string("nmd"); },
                               [](const DepolParams&) { return std::string("depol"); }},
                    spec);
}

void validate(const ChannelSpec& spec) {
  std::visit(Overloaded{
                 [](const AdcParams& c) {
                   if (!(c.gamma >= 0.0)) throw ChannelError("adc: gamma must be >= 0");
                   if (!(c.g > 0.0)) throw ChannelError("adc: g must be > 0");
                 },
                 [](const NmdParams& c) {
                   if (!(c.p >= 0.0 && c.p <= 0.5))
                     throw ChannelError("nmd: p must lie in [0, 1/2], got " + format_value(c.p));
                   (void)kappa_nmd(c.p, c.eta, c.omega);
                 },
                 [](const DepolParams& c) {
                   if (!(c.p >= 0.0 && c.p <= 1.0))
                     throw ChannelError("depol: p must lie in [0, 1], got " + format_value(c.p));
                   if (!(c.alpha >= 0.0)) throw ChannelError("depol: alpha must be >= 0");
                 },
             },
             spec);
}

double lambda_adc(double t, double gamma, double g) {
  if (!(g > 0.0)) throw ChannelError("lambda_adc: g must be > 0, got " + format_value(g));
  if (!(gamma >= 0.0)) throw ChannelError("lambda_adc: gamma must be >= 0");
  if (!(t >= 0.0)) throw ChannelError("lambda_adc: t must be >= 0");

  // l is imaginary whenever g < 2 gamma; sinh and cosh continue analytically.
  const Complex l = std::sqrt(Complex{g * g - 2.0 * gamma * g, 0.0});
  const Complex half = l * (t / 2.0);
  // (g/l) sinh(lt/2) tends to g t / 2 as l -> 0.
  const Complex ratio_term = std::abs(l) < 1e-300 ? Complex{g * t / 2.0, 0.0}
                                                  : (g / l) * std::sinh(half);
  const Complex bracket = ratio_term + std::cosh(half);
  const Complex value = 1.0 - std::exp(-g * t) * bracket * bracket;

  if (std::abs(value.imag()) >= kImagResidueLimit) {
    throw std::logic_error("lambda_adc: imaginary residue " + format_value(value.imag()));
  }
  if (value.real() < -kRangeSlack || value.real() > 1.0 + kRangeSlack) {
    throw std::logic_error("lambda_adc: value " + format_value(value.real()) +
                           " outside [0, 1]");
  }
  return std::clamp(value.real(), 0.0, 1.0);
}

double kappa_nmd(double p, double eta, double omega) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ChannelError("kappa_nmd: p must lie in [0, 1/2], got " + format_value(p));
  }
  const double denom = 1.0 + eta * (1.0 - 2.0 * p);
  if (denom == 0.0) throw ChannelError("kappa_nmd: denominator 1 + eta(1-2p) vanishes");
  const double kappa = p * (1.0 + eta * (1.0 - 2.0 * p) * std::sin(omega * p)) / denom;
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ChannelError("kappa_nmd: kappa = " + format_value(kappa) +
                       " is outside [0, 1] for these eta/omega");
  }
  return kappa;
}

DepolCoefficients depol_coefficients(double p, double alpha) {
  return {-alpha * p, alpha * (1.0 - p)};
}

CoinSet::CoinSet(std::size_t n, std::map<Arc, ComplexMatrix> coins)
    : n_(n), coins_(std::move(coins)) {
  for (const auto& [arc, m] : coins_) {
    if (m.rows() != n_ || m.cols() != n_) throw DimensionError("CoinSet: coin is not n x n");
    if (arc.source >= n_ || arc.target >= n_) throw DimensionError("CoinSet: arc out of range");
  }
}

const ComplexMatrix& CoinSet::coin(Arc a) const {
  const auto it = coins_.find(a);
  if (it == coins_.end()) {
    throw std::out_of_range("no coin for arc (" + std::to_string(a.source) + ", " +
                            std::to_string(a.target) + ")");
  }
  return it->second;
}

std::vector<Vertex> CoinSet::sources() const {
  std::vector<Vertex> out;
  for (const auto& [arc, m] : coins_)
    if (arc.is_loop()) out.push_back(arc.source);
  return out;
}

CoinSet CoinSet::with_coin(Arc a, ComplexMatrix m) const {
  auto coins = coins_;
  coins[a] = std::move(m);
  return CoinSet(n_, std::move(coins));
}

CoinSet build_coins_adc(const DirectedWalkGraph& g, double lambda) {
  require_weight(lambda, "lambda");
  const std::size_t n = g.order();
  const double stay = std::sqrt(1.0 - lambda);
  const double hop = std::sqrt(lambda);
  std::map<Arc, ComplexMatrix> coins;
  for (Vertex u = 0; u < n; ++u) {
    std::vector<Complex> diag(n, Complex{1.0, 0.0});
    for (const Arc& a : g.out_arcs(u)) {
      if (a.is_loop()) continue;
      diag[a.target] = stay;
      ComplexMatrix edge(n, n);
      edge(u, a.target) = hop;
      coins.emplace(a, std::move(edge));
    }
    coins.emplace(Arc{u, u}, ComplexMatrix::diagonal(diag));
  }
  return CoinSet(n, std::move(coins));
}

CoinSet build_coins_nmd(const DirectedWalkGraph& g, double kappa) {
  require_weight(kappa, "kappa");
  const std::size_t n = g.order();
  std::map<Arc, ComplexMatrix> coins;
  for (Vertex u = 0; u < n; ++u) {
    const std::size_t degree = g.edge_outdegree(u);
    // An isolated vertex keeps its mass: the loop alone must be an isometry.
    const double loop = degree == 0 ? 1.0 : std::sqrt(1.0 - kappa);
    coins.emplace(Arc{u, u}, scale(ComplexMatrix::identity(n), loop));
    for (const Arc& a : g.out_arcs(u)) {
      if (a.is_loop()) continue;
      const double w = std::sqrt(kappa / static_cast<double>(degree));
      coins.emplace(a, scale(weyl(n, static_cast<long long>(a.source),
                                  static_cast<long long>(a.target)),
                             w));
    }
  }
  return CoinSet(n, std::move(coins));
}

CoinSet build_coins_depol(const DirectedWalkGraph& g, double p, double alpha) {
  validate(DepolParams{p, alpha});
  const auto [lambda1, lambda2] = depol_coefficients(p, alpha);
  const std::size_t n = g.order();
  std::map<Arc, ComplexMatrix> coins;
  for (Vertex u = 0; u < n; ++u) {
    const double d = static_cast<double>(g.edge_outdegree(u));
    const double loop_sq = 1.0 + d * (1.0 - p) * lambda1 / (d + 1.0);
    if (loop_sq < 0.0) {
      throw ChannelError("depol: loop coefficient at vertex " + std::to_string(u) +
                         " is negative (" + format_value(loop_sq) + "); reduce alpha");
    }
    coins.emplace(Arc{u, u}, scale(ComplexMatrix::identity(n), std::sqrt(loop_sq)));
    const double w = std::sqrt(p * lambda2 / (d + 1.0));
    for (const Arc& a : g.out_arcs(u)) {
      if (a.is_loop()) continue;
      coins.emplace(a, scale(weyl(n, static_cast<long long>(a.source),
                                  static_cast<long long>(a.target)),
                             w));
    }
  }
  return CoinSet(n, std::move(coins));
}

CoinSet build_coins(const DirectedWalkGraph& g, const ChannelSpec& spec, double t) {
  return std::visit(
      Overloaded{
          [&](const AdcParams& c) { return build_coins_adc(g, lambda_adc(t, c.gamma, c.g)); },
          [&](const NmdParams& c) { return build_coins_nmd(g, kappa_nmd(c.p, c.eta, c.omega)); },
          [&](const DepolParams& c) { return build_coins_depol(g, c.p, c.alpha); },
      },
      spec);
}

double verify_completeness(const CoinSet& cs) {
  const std::size_t n = cs.dimension();
  std::vector<ComplexMatrix> sums(n, ComplexMatrix(n, n));
  for (const auto& [arc, c] : cs.coins()) {
    sums[arc.source] += adjoint(c) * c;
  }
  // A vertex without coins sums to zero and shows up as residual 1.
  const auto id = ComplexMatrix::identity(n);
  double worst = 0.0;
  for (const auto& sum : sums) worst = std::max(worst, max_abs_diff(sum, id));
  return worst;
}

}  // namespace oqw
