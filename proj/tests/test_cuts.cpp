#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sparsify/cuts.hpp"
#include "sparsify/error.hpp"
#include "sparsify/graph.hpp"
#include "sparsify/rng.hpp"
#include "sparsify/spectral.hpp"
#include "support/oracles.hpp"

using namespace sparsify;

namespace {

std::vector<Vertex> range(Vertex lo, Vertex hi) {
  std::vector<Vertex> out(hi - lo);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

std::vector<Vertex> from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if ((mask >> v) & 1) out.push_back(v);
  }
  return out;
}

long double choose(std::size_t n, std::size_t k) {
  long double c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

TEST_CASE("cut values on small graphs") {
  const auto k5 = make_clique(5, 1.0);
  CHECK(cut_value(k5, std::vector<Vertex>{0}) == 4.0);
  const auto k9 = make_clique(9, 1.0);
  for (Vertex k = 0; k <= 9; ++k) CHECK(cut_value(k9, range(0, k)) == k * (9.0 - k));

  const auto c4 = make_cycle(4, 1.5);
  CHECK(cut_value(c4, std::vector<Vertex>{0, 1}) == 3.0);
  CHECK(cut_value(c4, std::vector<Vertex>{0, 2}) == 6.0);
  CHECK(cut_value(c4, std::vector<Vertex>{}) == 0.0);
  CHECK(cut_value(c4, range(0, 4)) == 0.0);
}

TEST_CASE("interior weight and the regularity identity") {
  CHECK(interior_edge_weight(make_clique(4, 1.0), std::vector<Vertex>{0, 1, 2}) == 3.0);
  const auto g = oracle::random_weighted_graph(15, 0.4, 3);
  CHECK(interior_edge_weight(g, std::vector<Vertex>{}) == 0.0);
  CHECK(interior_edge_weight(g, std::vector<Vertex>{7}) == 0.0);

  const auto h = sample_regular_multigraph(20, 5, 1);
  const auto s = range(0, 10);
  CHECK(interior_edge_weight(h, s) == (10.0 * 5 - cut_value(h, s)) / 2);

  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 * (2 + rng.below(20));
    const std::size_t d = 1 + rng.below(8);
    const auto r = sample_regular_multigraph(n, d, rng.next());
    const auto subset = from_mask(rng.next(), n);
    REQUIRE(cut_value(r, subset) + 2 * interior_edge_weight(r, subset) ==
            static_cast<double>(subset.size() * d));
  }
}

TEST_CASE("exhaustive error of a graph against itself is zero") {
  const auto k6 = make_clique(6, 1.0);
  const auto report = cut_error_exhaustive(k6, k6);
  CHECK(report.epsilon == 0.0);
  CHECK(report.mode == CutMode::Exhaustive);
  CHECK_FALSE(report.lower_bound);
  CHECK(report.subsets_examined == 31);
}

TEST_CASE("four-cycle against K4 has error one half at the opposite pair") {
  const auto report = cut_error_exhaustive(make_cycle(4, 1.5), make_clique(4, 1.0));
  CHECK(report.epsilon == doctest::Approx(0.5));
  CHECK(report.subsets_examined == 7);
  const bool opposite = report.witness == std::vector<Vertex>{0, 2} ||
                        report.witness == std::vector<Vertex>{1, 3};
  CHECK(opposite);
}

TEST_CASE("exhaustive scan agrees with brute force") {
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const auto g = oracle::random_weighted_graph(n, 0.5, rng.next());
    const auto h = oracle::random_weighted_graph(n, 0.3, rng.next());
    const auto report = cut_error_exhaustive(h, g);
    const double truth = oracle::brute_cut_error(h, g);
    REQUIRE(report.epsilon == doctest::Approx(truth).epsilon(1e-12));
    REQUIRE(report.subsets_examined == (std::uint64_t{1} << (n - 1)) - 1);
    // The witness realizes the reported error.
    const double ch = cut_value(h, report.witness), cg = cut_value(g, report.witness);
    REQUIRE(std::abs(ch / cg - 1.0) == doctest::Approx(report.epsilon).epsilon(1e-12));
  }
  // Against a uniform clique the reference is evaluated in closed form.
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 4 + rng.below(9);
    const auto h = oracle::random_weighted_graph(n, 0.4, rng.next());
    const auto k = make_clique(n, 0.3);
    REQUIRE(cut_error_exhaustive(h, k).epsilon ==
            doctest::Approx(oracle::brute_cut_error(h, k)).epsilon(1e-12));
  }
}

TEST_CASE("incremental cuts stay accurate across long Gray-code runs") {
  // At n = 22 the scan crosses many resync boundaries; compare the profile
  // extremes with a from-scratch evaluation of the reported argmax sets.
  const auto h = oracle::random_weighted_graph(22, 0.3, 99);
  CutProfileOptions options;
  options.argmax_cap = 11;
  const auto profile = cut_profile(h, 3.0, options);
  for (const auto& row : profile.rows) {
    REQUIRE(row.argmax.has_value());
    const double ref = 3.0 * row.k * (22.0 - row.k) / 22.0;
    const double direct = cut_value(h, *row.argmax) / ref - 1.0;
    REQUIRE(std::abs(direct - row.max_deviation) <= 1e-9 * (1 + std::abs(direct)));
  }
  // Randomized subsets checked against the error scan's witness bookkeeping.
  const auto g = make_clique(22, 1.0);
  const auto report = cut_error_exhaustive(h, g);
  const double ch = cut_value(h, report.witness), cg = cut_value(g, report.witness);
  CHECK(std::abs(ch / cg - 1.0) == doctest::Approx(report.epsilon).epsilon(1e-9));
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t mask = 1 + rng.below((std::uint64_t{1} << 22) - 2);
    REQUIRE(std::abs(oracle::cut_of_mask(h, mask) / oracle::cut_of_mask(g, mask) - 1.0) <=
            report.epsilon + 1e-12);
  }
}

TEST_CASE("exhaustive mode enforces its preconditions") {
  const auto k31 = make_clique(31, 1.0);
  CHECK_THROWS_AS(cut_error_exhaustive(k31, k31), SizeLimit);
  CHECK_THROWS_AS(cut_error_exhaustive(make_clique(5, 1.0), make_clique(6, 1.0)), InvalidArgument);

  // A disconnected reference has a vanishing cut.
  const WeightedGraph split(4, {{0, 1, 1.0, 1}, {2, 3, 1.0, 1}});
  try {
    cut_error_exhaustive(make_clique(4, 1.0), split);
    FAIL("expected a degenerate reference");
  } catch (const DegenerateInput& e) {
    CHECK(std::string(e.what()).find("S = {") != std::string::npos);
  }
  CutSampling sampling;
  CHECK_THROWS_AS(cut_error_sampled(make_clique(4, 1.0), split, sampling), DegenerateInput);
}

TEST_CASE("sampled error falls back to enumeration on small graphs") {
  Rng rng(21);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + rng.below(11);
    const auto g = oracle::random_weighted_graph(n, 0.5, rng.next());
    const auto h = oracle::random_weighted_graph(n, 0.5, rng.next());
    CutSampling sampling;
    sampling.samples_per_size = 5000;
    sampling.seed = rng.next();
    const auto sampled = cut_error_sampled(h, g, sampling);
    const auto exact = cut_error_exhaustive(h, g);
    CHECK(sampled.lower_bound);
    CHECK(sampled.mode == CutMode::Sampled);
    REQUIRE(sampled.epsilon == doctest::Approx(exact.epsilon).epsilon(1e-12));
  }
}

TEST_CASE("sampled error never exceeds the exhaustive value") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 16 + 2 * rng.below(4);
    const auto h = scale_weights(sample_regular_multigraph(n, 4, rng.next()), (n - 1) / 4.0);
    const auto g = make_clique(n, 1.0);
    CutSampling sampling;
    sampling.samples_per_size = 20;
    sampling.seed = rng.next();
    const auto sampled = cut_error_sampled(h, g, sampling);
    REQUIRE(sampled.epsilon <= cut_error_exhaustive(h, g).epsilon + 1e-12);
  }
  const auto k = make_clique(40, 1.0);
  CHECK(cut_error_sampled(k, k, {}).epsilon == 0.0);
  CHECK_THROWS_AS(cut_error_sampled(k, k, {10, {40}, 0}), InvalidArgument);
}

TEST_CASE("sampling is reproducible and covers the requested sizes") {
  const std::size_t n = 60;
  const auto h = scale_weights(sample_regular_multigraph(n, 6, 3), (n - 1) / 6.0);
  const auto g = make_clique(n, 1.0);
  CutSampling sampling{50, {5, 30}, 17};
  const auto a = cut_error_sampled(h, g, sampling);
  const auto b = cut_error_sampled(h, g, sampling);
  CHECK(a.epsilon == b.epsilon);
  CHECK(a.witness == b.witness);
  // n singletons, C(n,2) pairs, 50 samples at each of two sizes.
  CHECK(a.subsets_examined == n + n * (n - 1) / 2 + 100);
}

TEST_CASE("cut and spectral errors are ordered") {
  Rng rng(4);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 6 + 2 * rng.below(6);
    const std::size_t d = 3 + rng.below(4);
    const auto h = scale_weights(sample_regular_multigraph(n, d, rng.next()), (n - 1.0) / d);
    const auto g = make_clique(n, 1.0);
    REQUIRE(cut_error_exhaustive(h, g).epsilon <= spectral_error(h, g).epsilon + 1e-9);
    const auto w = oracle::random_weighted_graph(n, 0.4, rng.next());
    const auto x = oracle::random_weighted_graph(n, 0.4, rng.next());
    REQUIRE(cut_error_exhaustive(w, x).epsilon <= spectral_error(w, x).epsilon + 1e-9);
  }
}

TEST_CASE("profile of the clique against its expectation is flat") {
  CutProfileOptions options;
  options.reference = CutReference::Expectation;
  const auto profile = cut_profile(make_clique(10, 1.0), 9.0, options);
  REQUIRE(profile.rows.size() == 5);
  for (const auto& row : profile.rows) {
    CHECK(row.max_deviation == doctest::Approx(0.0).scale(1.0));
    CHECK(row.min_deviation == doctest::Approx(0.0).scale(1.0));
  }
  CHECK(profile.max_abs_deviation() < 1e-12);
}

TEST_CASE("single matching on four vertices") {
  const WeightedGraph m(4, {{0, 1, 1.0, 1}, {2, 3, 1.0, 1}});
  const auto profile = cut_profile(m, 1.0);
  const auto& row = profile.row(2);
  CHECK(row.max_deviation == 1.0);
  CHECK(row.min_deviation == -1.0);
  CHECK(row.subsets_examined == 3);
  CHECK(row.alpha == 0.5);
  CHECK(profile.row(1).max_deviation == doctest::Approx(1.0 / 0.75 - 1.0));
  CHECK_THROWS_AS(profile.row(3), InvalidArgument);
}

TEST_CASE("exhaustive profiles count each unordered cut once") {
  const std::size_t n = 14;
  const auto h = sample_regular_multigraph(n, 5, 6);
  const auto profile = cut_profile(h, 5.0);
  CHECK(profile.mode == CutMode::Exhaustive);
  REQUIRE(profile.rows.size() == n / 2);
  for (const auto& row : profile.rows) {
    const long double expected = 2 * row.k == n ? choose(n, row.k) / 2 : choose(n, row.k);
    CHECK(row.subsets_examined == static_cast<std::uint64_t>(expected));
  }
}

TEST_CASE("profile extremes bound the exhaustive cut error") {
  const std::size_t n = 16;
  const auto base = sample_regular_multigraph(n, 4, 12);
  const auto h = scale_weights(base, 15.0 / 4.0);
  const auto eps = cut_error_exhaustive(h, make_clique(n, 1.0)).epsilon;
  // With H scaled to the clique's degree, the expectation reference equals cut_K(S).
  CutProfileOptions options;
  options.reference = CutReference::Expectation;
  const auto profile = cut_profile(h, 15.0, options);
  CHECK(profile.max_abs_deviation() == doctest::Approx(eps).epsilon(1e-12));
}

TEST_CASE("sampled profiles use requested sizes and are reproducible") {
  const std::size_t n = 200;
  const auto h = sample_regular_multigraph(n, 8, 1);
  CutProfileOptions options;
  options.sizes = {50, 3, 100, 3};
  options.samples_per_size = 40;
  options.seed = 9;
  const auto a = cut_profile(h, 8.0, options);
  const auto b = cut_profile(h, 8.0, options);
  CHECK(a.mode == CutMode::Sampled);
  REQUIRE(a.rows.size() == 3);
  CHECK(a.rows[0].k == 3);
  CHECK(a.rows[1].k == 50);
  CHECK(a.rows[2].k == 100);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.rows[i].max_deviation == b.rows[i].max_deviation);
    CHECK(a.rows[i].min_deviation <= a.rows[i].max_deviation);
    CHECK(a.rows[i].subsets_examined == 40);
  }
  CHECK(a.row(3).argmax.has_value());
  CHECK_FALSE(a.row(50).argmax.has_value());
  options.sizes = {101};
  CHECK_THROWS_AS(cut_profile(h, 8.0, options), InvalidArgument);
  CHECK_THROWS_AS(cut_profile(WeightedGraph(1, {}), 1.0), InvalidArgument);
}

TEST_CASE("forced sampling over all subsets matches the exhaustive profile") {
  const auto h = sample_regular_multigraph(12, 3, 2);
  const auto exact = cut_profile(h, 3.0);
  CutProfileOptions options;
  options.force_sampled = true;
  options.samples_per_size = 1000;
  const auto sampled = cut_profile(h, 3.0, options);
  REQUIRE(sampled.rows.size() == exact.rows.size());
  for (std::size_t i = 0; i < exact.rows.size(); ++i) {
    CHECK(sampled.rows[i].max_deviation == doctest::Approx(exact.rows[i].max_deviation));
    CHECK(sampled.rows[i].min_deviation == doctest::Approx(exact.rows[i].min_deviation));
    CHECK(sampled.rows[i].subsets_examined == exact.rows[i].subsets_examined);
  }
}

TEST_CASE("balanced deviation shrinks as n grows") {
  // Exact largest |deviation| at k = n/2, d = 8, over 20 seeds. Cut values are
  // integers, so medians tie at small n; the mean separates them.
  struct Summary {
    double median, mean;
  };
  auto summarize = [](std::size_t n) {
    std::vector<double> devs;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto h = sample_regular_multigraph(n, 8, derive_seed(n, s));
      const auto profile = cut_profile(h, 8.0);
      const auto& row = profile.row(n / 2);
      devs.push_back(std::max(std::abs(row.max_deviation), std::abs(row.min_deviation)));
    }
    std::sort(devs.begin(), devs.end());
    return Summary{(devs[9] + devs[10]) / 2, std::accumulate(devs.begin(), devs.end(), 0.0) / 20};
  };
  const auto small = summarize(16), large = summarize(24);
  CHECK(large.median <= small.median);
  CHECK(large.mean < small.mean);
}

TEST_CASE("profile CSV layout") {
  const WeightedGraph m(4, {{0, 1, 1.0, 1}, {2, 3, 1.0, 1}});
  std::ostringstream out;
  write_cut_profile_csv(cut_profile(m, 1.0), out);
  CHECK(out.str() ==
        "k,alpha,max_dev,min_dev,mode,samples\n"
        "1,0.25,0.33333333333333326,0.33333333333333326,exhaustive,4\n"
        "2,0.5,1,-1,exhaustive,3\n");
}
