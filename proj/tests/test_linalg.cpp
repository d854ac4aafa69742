#include "doctest.h"
#include "test_support.hpp"

#include "oqw/linalg.hpp"

#include <random>

using namespace oqw;
using oqw::testing::random_matrix;
using oqw::testing::random_psd;
using oqw::testing::weyl_entry;

TEST_CASE("weyl(n, 0, 0) is the identity") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(max_abs_diff(weyl(n, 0, 0), ComplexMatrix::identity(n)) == 0.0);
  }
}

TEST_CASE("order-2 Weyl operators are Pauli matrices") {
  const ComplexMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix sigma_z{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix i_sigma_y{{0.0, 1.0}, {-1.0, 0.0}};
  CHECK(max_abs_diff(weyl(2, 0, 1), sigma_x) < 1e-15);
  CHECK(max_abs_diff(weyl(2, 1, 0), sigma_z) < 1e-15);
  CHECK(max_abs_diff(weyl(2, 1, 1), i_sigma_y) < 1e-15);
}

TEST_CASE("weyl(3, 1, 1) matches direct evaluation") {
  const auto u = weyl(3, 1, 1);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(std::abs(u(r, c) - weyl_entry(3, 1, 1, r, c)) < 1e-15);
  CHECK(std::abs(u(0, 1) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(u(1, 2) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
  CHECK(std::abs(u(2, 0) - std::polar(1.0, 4.0 * std::numbers::pi / 3.0)) < 1e-15);
  CHECK(u(0, 0) == Complex{});
}

TEST_CASE("weyl indices reduce mod n and order 0 is rejected") {
  CHECK(weyl(4, 5, -1) == weyl(4, 1, 3));
  CHECK_THROWS_AS(weyl(0, 0, 0), std::invalid_argument);
}

TEST_CASE("weyl operators are unitary for n <= 8") {
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) CHECK(is_unitary(weyl(n, u, v), 1e-12));
}

TEST_CASE("Weyl products close up to a phase") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u2 = 0; u2 < n; ++u2)
          for (std::size_t v2 = 0; v2 < n; ++v2) {
            const auto prod = weyl(n, u, v) * weyl(n, u2, v2);
            const auto target = weyl(n, (u + u2) % n, (v + v2) % n);
            // Same support, so a single ratio must relate every nonzero entry.
            Complex phase{};
            bool ok = true;
            for (std::size_t r = 0; r < n && ok; ++r)
              for (std::size_t c = 0; c < n && ok; ++c) {
                if (std::abs(target(r, c)) < 0.5) {
                  ok = std::abs(prod(r, c)) < 1e-12;
                  continue;
                }
                const Complex ratio = prod(r, c) / target(r, c);
                if (phase == Complex{}) phase = ratio;
                ok = std::abs(ratio - phase) < 1e-12;
              }
            CHECK(ok);
            CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
          }
  }
}

TEST_CASE("basic arithmetic") {
  CHECK(trace(ComplexMatrix::identity(5)) == Complex{5.0, 0.0});
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) == ComplexMatrix::identity(6));
  const auto u = weyl(3, 1, 1);
  CHECK(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(3)) < 1e-15);

  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(kron(a, b) == ComplexMatrix{{0.0, 1.0, 0.0, 2.0},
                                    {1.0, 0.0, 2.0, 0.0},
                                    {0.0, 3.0, 0.0, 4.0},
                                    {3.0, 0.0, 4.0, 0.0}});
  CHECK(add(a, b) == ComplexMatrix{{1.0, 3.0}, {4.0, 4.0}});
  CHECK(scale(a, 2.0) == ComplexMatrix{{2.0, 4.0}, {6.0, 8.0}});
  CHECK(adjoint(ComplexMatrix{{Complex{0, 1}, 2.0}}) == ComplexMatrix{{Complex{0, -1}}, {2.0}});
}

TEST_CASE("dimension mismatches throw") {
  const ComplexMatrix a(2, 3);
  const ComplexMatrix b(2, 2);
  CHECK_THROWS_AS(matmul(a, b), DimensionError);
  CHECK_THROWS_AS(add(a, b), DimensionError);
  CHECK_THROWS_AS(trace(a), DimensionError);
  CHECK_THROWS_AS(hermitian_eig(a), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
}

TEST_CASE("hermitian_eig on known spectra") {
  auto eig = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
  CHECK(eig.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0));

  eig = hermitian_eig(ComplexMatrix::identity(4));
  for (double x : eig.eigenvalues) CHECK(x == doctest::Approx(1.0));

  // J/5 is a rank-1 projector.
  const auto j5 = scale(ComplexMatrix::ones(5), 0.2);
  REQUIRE(max_abs_diff(j5 * j5, j5) < 1e-15);
  eig = hermitian_eig(j5);
  CHECK(std::abs(eig.eigenvalues[0] - 1.0) < 1e-12);
  for (std::size_t k = 1; k < 5; ++k) CHECK(std::abs(eig.eigenvalues[k]) < 1e-12);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices up to n = 32") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 5u, 11u, 32u}) {
    const auto a = random_matrix(n, n, rng);
    const auto h = scale(a + adjoint(a), 0.5);
    const auto eig = hermitian_eig(h);
    for (std::size_t k = 1; k < n; ++k) CHECK(eig.eigenvalues[k - 1] >= eig.eigenvalues[k]);
    std::vector<Complex> diag(eig.eigenvalues.begin(), eig.eigenvalues.end());
    const auto rebuilt = eig.eigenvectors * ComplexMatrix::diagonal(diag) * adjoint(eig.eigenvectors);
    CHECK(frobenius_norm(h - rebuilt) <= 1e-10 * frobenius_norm(h));
    CHECK(is_unitary(eig.eigenvectors, 1e-10));
  }
}

TEST_CASE("psd_sqrt known values") {
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal({4.0, 9.0})),
                     ComplexMatrix::diagonal({2.0, 3.0})) < 1e-14);
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-14);
  const auto j5 = scale(ComplexMatrix::ones(5), 0.2);
  const auto s = psd_sqrt(j5);
  CHECK(max_abs_diff(s, j5) < 1e-12);
  CHECK(max_abs_diff(s * s, j5) < 1e-9);
}

TEST_CASE("psd_sqrt inverts squaring on random PSD matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const auto s = random_psd(n, rng);
    CHECK(max_abs_diff(psd_sqrt(s * s), s) < 1e-8);
    const auto r = psd_sqrt(s);
    CHECK(max_abs_diff(r * r, s) < 1e-9 * std::max(1.0, max_abs(s)));
    CHECK(is_psd(r, 1e-10));
  }
}

TEST_CASE("psd_sqrt clamps tiny negative eigenvalues and rejects real ones") {
  const auto tiny = ComplexMatrix::diagonal({1.0, -5e-11});
  const auto s = psd_sqrt(tiny);
  CHECK(s(1, 1) == Complex{});
  CHECK_THROWS_AS(psd_sqrt(ComplexMatrix::diagonal({1.0, -1e-6})), std::domain_error);
}

TEST_CASE("predicates") {
  CHECK(is_hermitian(ComplexMatrix{{1.0, Complex{0, 1}}, {Complex{0, -1}, 2.0}}));
  CHECK_FALSE(is_hermitian(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}));
  CHECK_FALSE(is_unitary(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}));
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -0.5})));
}

TEST_CASE("global tolerance is configurable") {
  const double saved = tolerance();
  CHECK(saved == 1e-10);
  set_tolerance(1e-3);
  CHECK(is_hermitian(ComplexMatrix{{1.0, 1e-4}, {0.0, 1.0}}));
  set_tolerance(saved);
  CHECK_FALSE(is_hermitian(ComplexMatrix{{1.0, 1e-4}, {0.0, 1.0}}));
  CHECK_THROWS(set_tolerance(0.0));
}
