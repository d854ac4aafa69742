#include "doctest.h"
#include "test_support.hpp"

#include "oqw/metrics.hpp"
#include "oqw/oracle.hpp"

#include <cmath>
#include <numeric>

using namespace oqw;
using oqw::testing::example_graphs;
using oqw::testing::reference_channels;

namespace {

WalkerState p5_adc_one_step(double lambda) {
  const auto g = to_walk_graph(path(5));
  return step(initial_state(5), build_coins_adc(g, lambda), g);
}

}  // namespace

TEST_CASE("probabilities") {
  const auto p0 = probabilities(initial_state(5));
  CHECK(p0 == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

  const double lambda = 0.42;
  const auto p1 = probabilities(p5_adc_one_step(lambda));
  CHECK(std::abs(p1[0] - (1.0 - lambda / 5.0)) < 1e-14);
  CHECK(std::abs(p1[1] - lambda / 5.0) < 1e-14);
  for (Vertex u = 2; u < 5; ++u) CHECK(p1[u] == 0.0);

  CHECK_THROWS_AS(probabilities(WalkerState({ComplexMatrix{{Complex{1.0, 1e-6}, 0.0}, {0.0, 0.0}},
                                             ComplexMatrix(2, 2)})),
                  std::logic_error);
}

TEST_CASE("probabilities match the diagonal of the composite state") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto s = testing::random_state(n, rng);
    const auto full = oracle::embed(s);
    const auto p = probabilities(s);
    for (Vertex u = 0; u < n; ++u) {
      double brute = 0.0;
      for (std::size_t i = 0; i < n; ++i) brute += full(i * n + u, i * n + u).real();
      CHECK(std::abs(brute - p[u]) <= 1e-12);
    }
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coherence_l1") {
  CHECK(coherence_l1(initial_state(5)) == doctest::Approx(4.0).epsilon(1e-15));
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(coherence_l1(initial_state(n)) == doctest::Approx(static_cast<double>(n - 1)));
  }

  std::vector<ComplexMatrix> diag_blocks;
  for (int u = 0; u < 3; ++u) diag_blocks.push_back(ComplexMatrix::diagonal({0.1, 0.1 * u, 0.05}));
  CHECK(coherence_l1(WalkerState(diag_blocks)) == 0.0);

  // Loop coin diag(1, s, 1, 1, 1): off-diagonal sum of d d^T / 5 is ((sum d)^2 - sum d^2) / 5.
  const double lambda = 0.6;
  const double s = std::sqrt(1.0 - lambda);
  const double expected = ((4.0 + s) * (4.0 + s) - (4.0 + s * s)) / 5.0;
  CHECK(std::abs(coherence_l1(p5_adc_one_step(lambda)) - expected) < 1e-14);
}

TEST_CASE("coherence matches the composite-state definition") {
  std::mt19937_64 rng(9);
  const auto s = testing::random_state(4, rng);
  const auto full = oracle::embed(s);
  double brute = 0.0;
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < full.cols(); ++j)
      if (i != j) brute += std::abs(full(i, j));
  CHECK(std::abs(brute - coherence_l1(s)) < 1e-12);
}

TEST_CASE("fidelity_to_initial") {
  for (const auto& [name, graph] : example_graphs()) {
    const auto s0 = initial_state(graph.order());
    CHECK(std::abs(fidelity_to_initial(s0, s0) - 1.0) <= 1e-10);
    CHECK(std::abs(fidelity(s0, s0) - 1.0) <= 1e-10);
  }

  // All mass away from the start vertex.
  std::vector<ComplexMatrix> blocks(3, ComplexMatrix(3, 3));
  blocks[1] = scale(ComplexMatrix::identity(3), 1.0 / 3.0);
  const WalkerState away(blocks);
  CHECK(fidelity_to_initial(initial_state(3), away) == 0.0);
  CHECK(fidelity(initial_state(3), away) == 0.0);

  for (double lambda : {0.1, 0.5, 0.9, 1.0}) {
    const double expected = std::pow((4.0 + std::sqrt(1.0 - lambda)) / 5.0, 2);
    const auto s1 = p5_adc_one_step(lambda);
    CHECK(std::abs(fidelity_to_initial(initial_state(5), s1) - expected) < 1e-12);
    CHECK(std::abs(fidelity(initial_state(5), s1) - expected) < 1e-9);
  }

  CHECK_THROWS_AS(fidelity_to_initial(initial_state(3), initial_state(4)), DimensionError);
  CHECK_THROWS_AS(fidelity(initial_state(3), initial_state(4)), DimensionError);
}

TEST_CASE("fidelity against a mixed reference uses matrix square roots") {
  std::mt19937_64 rng(21);
  const auto rho = testing::random_state(3, rng);
  const FidelityReference ref(rho);
  CHECK_FALSE(ref.is_pure());
  CHECK(std::abs(ref(rho) - 1.0) < 1e-9);
  const auto sigma = testing::random_state(3, rng);
  const double f = ref(sigma);
  CHECK(f >= 0.0);
  CHECK(f <= 1.0 + 1e-9);
  CHECK(std::abs(f - fidelity(sigma, rho)) < 1e-9);  // symmetric
  CHECK(FidelityReference(initial_state(4, 1)).is_pure());
}

TEST_CASE("both fidelity routes agree along every reference run") {
  for (const auto& [name, graph] : example_graphs()) {
    for (const auto& channel : reference_channels()) {
      const auto snaps = run({graph, channel, 30, 1.0, 0});
      double worst = 0.0;
      for (const auto& s : snaps)
        worst = std::max(worst, std::abs(fidelity_to_initial(snaps[0], s) - fidelity(snaps[0], s)));
      INFO(name << " / " << channel_name(channel));
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("compute_series") {
  CHECK_THROWS_AS(compute_series({}), std::invalid_argument);
  const auto only = compute_series({initial_state(4)});
  CHECK(only.steps == 0);
  CHECK(only.probabilities == std::vector<std::vector<double>>{{1.0, 0.0, 0.0, 0.0}});
  CHECK(only.coherence[0] == doctest::Approx(3.0));
  CHECK(only.fidelity[0] == doctest::Approx(1.0));

  for (const auto& [name, graph] : example_graphs()) {
    for (const auto& channel : reference_channels()) {
      const auto series = compute_series(run({graph, channel, 30, 1.0, 0}));
      REQUIRE(series.probabilities.size() == 31);
      CHECK(std::abs(series.fidelity[0] - 1.0) <= 1e-9);
      for (std::size_t k = 0; k <= series.steps; ++k) {
        const auto& row = series.probabilities[k];
        CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) <= 1e-9);
        for (double p : row) CHECK(p >= -1e-10);
        CHECK(series.coherence[k] >= 0.0);
        CHECK(series.fidelity[k] >= -1e-12);
        CHECK(series.fidelity[k] <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("dephasing and depolarizing never increase coherence") {
  for (const auto& [name, graph] : example_graphs()) {
    for (const ChannelSpec& channel : {ChannelSpec{NmdParams{0.5, 0.5, 50.0}},
                                       ChannelSpec{NmdParams{0.3, 0.5, 50.0}},
                                       ChannelSpec{DepolParams{0.5, 1.0}}}) {
      const auto series = compute_series(run({graph, channel, 30, 1.0, 0}));
      INFO(name << " / " << channel_name(channel));
      for (std::size_t k = 1; k <= series.steps; ++k)
        CHECK(series.coherence[k] <= series.coherence[k - 1] + 1e-12);
    }
  }
}
