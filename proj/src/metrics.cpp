#include "oqw/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace oqw {

namespace {

constexpr double kImagTraceLimit = 1e-12;
constexpr double kClampFloor = -1e-10;
constexpr double kPurityTolerance = 1e-12;

void require_same_dimension(const WalkerState& a, const WalkerState& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("fidelity: dimension mismatch");
}

}  // namespace

std::vector<double> probabilities(const WalkerState& s) {
  std::vector<double> out;
  out.reserve(s.dimension());
  for (const auto& b : s.blocks()) {
    const Complex t = trace(b);
    if (std::abs(t.imag()) >= kImagTraceLimit) {
      throw std::logic_error("probabilities: block trace has imaginary part " +
                             std::to_string(t.imag()));
    }
    out.push_back(t.real());
  }
  return out;
}

double coherence_l1(const WalkerState& s) {
  double sum = 0.0;
  for (const auto& b : s.blocks())
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (i != j) sum += std::abs(b(i, j));
  return sum;
}

double fidelity(const WalkerState& rho, const WalkerState& sigma) {
  require_same_dimension(rho, sigma);
  double root_trace = 0.0;
  for (Vertex u = 0; u < rho.dimension(); ++u) {
    const auto& a = rho.block(u);
    const auto& b = sigma.block(u);
    if (max_abs(a) == 0.0 || max_abs(b) == 0.0) continue;
    const auto sqrt_a = psd_sqrt(a);
    root_trace += trace(psd_sqrt(sqrt_a * b * sqrt_a)).real();
  }
  return root_trace * root_trace;
}

FidelityReference::FidelityReference(const WalkerState& reference) : reference_(reference) {
  std::size_t nonzero = 0;
  for (Vertex u = 0; u < reference.dimension(); ++u) {
    if (max_abs(reference.block(u)) != 0.0) {
      ++nonzero;
      support_ = u;
    }
  }
  if (nonzero != 1) return;
  const auto eig = hermitian_eig(reference.block(support_));
  const double top = eig.eigenvalues.front();
  double rest = 0.0;
  for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k) rest += std::abs(eig.eigenvalues[k]);
  if (std::abs(top - 1.0) > kPurityTolerance || rest > kPurityTolerance) return;
  pure_ = true;
  psi_.resize(reference.dimension());
  for (std::size_t i = 0; i < psi_.size(); ++i) psi_[i] = eig.eigenvectors(i, 0);
}

double FidelityReference::operator()(const WalkerState& s) const {
  require_same_dimension(reference_, s);
  if (!pure_) return fidelity(reference_, s);
  const auto& b = s.block(support_);
  Complex value{};
  for (std::size_t i = 0; i < psi_.size(); ++i)
    for (std::size_t j = 0; j < psi_.size(); ++j) value += std::conj(psi_[i]) * b(i, j) * psi_[j];
  return value.real();
}

double fidelity_to_initial(const WalkerState& s0, const WalkerState& sk) {
  return FidelityReference(s0)(sk);
}

MetricSeries compute_series(const std::vector<WalkerState>& snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("compute_series: no snapshots");
  MetricSeries series;
  series.steps = snapshots.size() - 1;
  const FidelityReference reference(snapshots.front());
  for (const auto& s : snapshots) {
    auto row = probabilities(s);
    for (auto& p : row)
      if (p < 0.0 && p > kClampFloor) p = 0.0;
    series.probabilities.push_back(std::move(row));
    series.coherence.push_back(coherence_l1(s));
    series.fidelity.push_back(reference(s));
  }
  return series;
}

}  // namespace oqw
