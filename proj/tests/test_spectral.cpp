#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sparsify/error.hpp"
#include "sparsify/graph.hpp"
#include "sparsify/rng.hpp"
#include "sparsify/spectral.hpp"
#include "support/oracles.hpp"

using namespace sparsify;

namespace {

void check_spectrum(const std::vector<double>& got, std::vector<double> want, double tol = 1e-10) {
  std::sort(want.begin(), want.end());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).scale(1.0).epsilon(tol));
}

}  // namespace

TEST_CASE("laplacian rows sum to zero and match the edge-sum form") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3 + rng.below(30);
    const auto g = oracle::random_weighted_graph(n, 0.3, rng.next());
    const auto l = laplacian(g);
    const Eigen::MatrixXd ref = oracle::dense_laplacian(g);
    REQUIRE((l.dense() - ref).norm() <= 1e-12 * ref.norm());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(l.dense().row(i).sum()) < 1e-12);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd x = Eigen::VectorXd::Random(static_cast<Eigen::Index>(n));
      const double dense = x.dot(l.dense() * x);
      const double edges = laplacian_quadratic_form(g, {x.data(), n});
      REQUIRE(edges == doctest::Approx(dense).epsilon(1e-10));
    }
  }
  const auto a = adjacency_matrix(WeightedGraph(3, {{0, 2, 2.5, 2}}));
  CHECK(a(0, 2) == 2.5);
  CHECK(a(2, 0) == 2.5);
  CHECK(a(1, 1) == 0.0);
}

TEST_CASE("closed-form Laplacian spectra") {
  const std::size_t n = 7;
  std::vector<double> ones(n - 1, 1.0);
  ones.insert(ones.begin(), 0.0);
  check_spectrum(symmetric_eigenvalues(laplacian(make_clique(n, 1.0 / n))), ones);

  check_spectrum(symmetric_eigenvalues(laplacian(WeightedGraph(2, {{0, 1, 0.7, 1}}))), {0.0, 1.4});
  check_spectrum(symmetric_eigenvalues(laplacian(make_cycle(4, 1.5))), {0, 3, 3, 6});

  std::vector<double> c6;
  for (int j = 0; j < 6; ++j) c6.push_back(2 - 2 * std::cos(std::numbers::pi * j / 3));
  check_spectrum(symmetric_eigenvalues(laplacian(make_cycle(6, 1.0))), c6);
}

TEST_CASE("eigenvalues of trivial matrices") {
  check_spectrum(symmetric_eigenvalues(SymmetricMatrix(3)), {0, 0, 0});
  const double d[] = {3, 1, 2};
  check_spectrum(symmetric_eigenvalues(SymmetricMatrix::diagonal(d)), {1, 2, 3});
  CHECK(symmetric_eigenvalues(SymmetricMatrix(0)).empty());
  CHECK_THROWS_AS(symmetric_eigenvalues(SymmetricMatrix(kDenseEigenLimit + 1)), SizeLimit);
}

TEST_CASE("symmetric storage ignores the upper triangle") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 99, 2, 3;
  const auto s = SymmetricMatrix::from_lower(m);
  CHECK(s(0, 1) == 2);
  CHECK(s(1, 0) == 2);
  SymmetricMatrix t(3);
  t.set(0, 2, 4.0);
  t.add(2, 0, 1.0);
  CHECK(t(0, 2) == 5.0);
  CHECK(t(2, 0) == 5.0);
  CHECK(t.inf_norm() == 5.0);
}

TEST_CASE("eigenpairs have small residuals") {
  const auto g = oracle::random_weighted_graph(60, 0.2, 5);
  const auto l = laplacian(g);
  const auto eig = symmetric_eigen(l);
  REQUIRE(eig.values.size() == 60);
  CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  const double norm = l.inf_norm();
  for (std::size_t j = 0; j < 60; j += 7) {
    const Eigen::VectorXd v = eig.vectors.col(static_cast<Eigen::Index>(j));
    CHECK((l.dense() * v - eig.values[j] * v).norm() <= 1e-8 * norm);
  }
}

TEST_CASE("spectral error of a graph against itself is zero") {
  const auto g = oracle::random_weighted_graph(25, 0.3, 1);
  const auto r = spectral_error(g, g);
  CHECK(r.epsilon == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(r.method == "whitened");
  CHECK(r.kernel_ok);
  CHECK(r.n == 25);
  const auto k = make_clique(12, 0.5);
  CHECK(spectral_error(k, k).epsilon < 1e-12);
  CHECK(spectral_error(k, k).method == "clique");
}

TEST_CASE("four-cycle against K4") {
  const auto h = make_cycle(4, 1.5), g = make_clique(4, 1.0);
  for (const auto& r : {spectral_error_whitened(h, g), spectral_error_clique(h, g)}) {
    CHECK(r.epsilon == doctest::Approx(0.5));
    CHECK(r.lambda_min == doctest::Approx(0.75));
    CHECK(r.lambda_max == doctest::Approx(1.5));
    CHECK(r.epsilon == std::max(std::abs(r.lambda_min - 1), std::abs(r.lambda_max - 1)));
  }
}

TEST_CASE("whitening and the clique shortcut agree") {
  Rng rng(2);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + rng.below(60);
    const double w = 0.1 + rng.uniform();
    const auto h = oracle::random_weighted_graph(n, 0.2, rng.next());
    const auto g = make_clique(n, w);
    const auto a = spectral_error_whitened(h, g), b = spectral_error_clique(h, g);
    REQUIRE(a.epsilon == doctest::Approx(b.epsilon).epsilon(1e-9));
    REQUIRE(a.lambda_min == doctest::Approx(b.lambda_min).epsilon(1e-9));
    REQUIRE(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-9));
  }
  CHECK_THROWS_AS(spectral_error_clique(make_cycle(5, 1.0), make_cycle(5, 1.0)), InvalidArgument);
}

TEST_CASE("simultaneous scaling leaves the error unchanged") {
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 5 + rng.below(30);
    const auto h = oracle::random_weighted_graph(n, 0.3, rng.next());
    const auto g = oracle::random_weighted_graph(n, 0.3, rng.next());
    const double c = std::exp(4 * rng.uniform() - 2);
    const double base = spectral_error(h, g).epsilon;
    REQUIRE(spectral_error(scale_weights(h, c), scale_weights(g, c)).epsilon ==
            doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("scaled regular graphs match the adjacency spectrum") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n = 40 + 20 * seed, d = 3 + seed;
    const auto base = sample_regular_multigraph(n, d, seed);
    const auto h = scale_weights(base, (n - 1.0) / d);
    const double ours = spectral_error(h, make_clique(n, 1.0)).epsilon;
    REQUIRE(ours == doctest::Approx(oracle::adjacency_spectral_error(base, d)).epsilon(1e-8));
  }
}

TEST_CASE("random regular error sits near the Ramanujan scale") {
  const std::size_t n = 500, d = 10;
  const auto h = scale_weights(sample_regular_multigraph(n, d, 42), (n - 1.0) / d);
  const double eps = spectral_error(h, make_clique(n, 1.0)).epsilon;
  const double ramanujan = 2 * std::sqrt(d - 1.0) / d;
  CHECK(eps > 0.8 * ramanujan);
  CHECK(eps < 3.0 / std::sqrt(10.0));
}

TEST_CASE("incomparable pairs are rejected") {
  // G disconnected, H crosses the components.
  const WeightedGraph g(4, {{0, 1, 1.0, 1}, {2, 3, 1.0, 1}});
  CHECK_THROWS_AS(spectral_error(make_clique(4, 1.0), g), NotComparable);
  // The other direction is fine: H is zero across the split.
  const auto r = spectral_error(g, make_clique(4, 1.0));
  CHECK(r.lambda_min == doctest::Approx(0.0).scale(1.0));
  CHECK(r.epsilon == doctest::Approx(1.0));
  CHECK_THROWS_AS(spectral_error(make_clique(4, 1.0), make_clique(5, 1.0)), InvalidArgument);
}

TEST_CASE("disconnected references compare on their range") {
  // H = 2G on each component: every generalized eigenvalue on range(L_G) is 2.
  const WeightedGraph g(6, {{0, 1, 1.0, 1}, {1, 2, 1.0, 1}, {3, 4, 1.0, 1}, {4, 5, 2.0, 1}});
  const auto r = spectral_error(scale_weights(g, 2.0), g);
  CHECK(r.lambda_min == doctest::Approx(2.0));
  CHECK(r.lambda_max == doctest::Approx(2.0));
  CHECK(r.epsilon == doctest::Approx(1.0));
}
