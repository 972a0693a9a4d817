#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "sparsify/bounds.hpp"
#include "sparsify/cuts.hpp"
#include "sparsify/error.hpp"
#include "sparsify/graph.hpp"
#include "sparsify/martingale.hpp"
#include "sparsify/rng.hpp"

using namespace sparsify;

namespace {

std::vector<Vertex> first_k(std::size_t k) {
  std::vector<Vertex> s(k);
  for (Vertex v = 0; v < k; ++v) s[v] = v;
  return s;
}

}  // namespace

TEST_CASE("smallest martingale has one step") {
  int hits = 0;
  const int trials = 30000;
  for (int s = 0; s < trials; ++s) {
    const auto t = simulate_reveal(6, 2, 1, s);
    REQUIRE(t.steps.size() == 1);
    REQUIRE(t.x0 == doctest::Approx(1.0 / 5));
    const auto& step = t.steps[0];
    REQUIRE((step.x == 0.0 || step.x == 1.0));
    REQUIRE(step.y == doctest::Approx(step.x == 1.0 ? 4.0 / 5 : -1.0 / 5));
    REQUIRE(step.w == (step.z == 1));
    hits += step.w;
  }
  CHECK(hits / double(trials) == doctest::Approx(1.0 / 5).epsilon(0.04));
}

TEST_CASE("trace bookkeeping") {
  const auto t = simulate_reveal(30, 7, 4, 12);
  CHECK(t.steps.size() == 4 * 6);
  CHECK(t.x0 == doctest::Approx(4 * 21.0 / 29));
  double prev = t.x0;
  for (std::size_t l = 0; l < t.steps.size(); ++l) {
    const auto& s = t.steps[l];
    REQUIRE(s.matching == l / 6);
    REQUIRE(s.i == l % 6);
    REQUIRE(s.y == doctest::Approx(s.x - prev).scale(1.0).epsilon(1e-15));
    REQUIRE((s.a >= 0 && s.a <= s.a_before && s.b <= s.b_before));
    prev = s.x;
    // Repeated queries of an already matched vertex change nothing.
    if (s.a == s.a_before) {
      REQUIRE(s.y == 0.0);
      REQUIRE(s.w == 0);
    }
  }
  // Partners reported for vertices matched earlier in the same matching.
  const auto g = sample_regular_multigraph(30, 4, 12);
  const auto& decomposition = g.decomposition()->matchings;
  for (const auto& s : t.steps) {
    bool found = false;
    for (auto [u, v] : decomposition[s.matching]) {
      found |= (u == s.i && v == s.z) || (v == s.i && u == s.z);
    }
    REQUIRE(found);
  }
}

TEST_CASE("terminal value is the realized interior count") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 * (3 + rng.below(30));
    const std::size_t k = 2 + rng.below(n / 2 - 2);
    const std::size_t d = 1 + rng.below(6);
    const std::uint64_t seed = rng.next();
    const auto trace = simulate_reveal(n, k, d, seed);
    const auto g = sample_regular_multigraph(n, d, seed);
    REQUIRE(trace.terminal() == doctest::Approx(interior_edge_weight(g, first_k(k))).epsilon(1e-12));
    REQUIRE(std::abs(trace.terminal() - std::round(trace.terminal())) <= 1e-9);
  }
}

TEST_CASE("increments obey the lemma bounds in every trace") {
  LemmaCheck total;
  double worst_quad = 0.0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto trace = simulate_reveal(40, 10, 3, derive_seed(77, s));
    total += check_lemmas(trace);
    worst_quad = std::max(worst_quad, trace.quad_char());
  }
  CHECK(total.steps == 10000 * 27);
  CHECK(total.ratio_violations == 0);
  CHECK(total.range_violations == 0);
  CHECK(total.magnitude_violations == 0);
  CHECK(total.quad_char_violations == 0);
  CHECK(total.terminal_violations == 0);
  CHECK(total.quad_char_bound == doctest::Approx(10 * 9 * 3 / 20.0));
  CHECK(worst_quad <= total.quad_char_bound);

  Rng rng(9);
  LemmaCheck mixed;
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 * (3 + rng.below(40));
    const std::size_t k = 2 + rng.below(n / 2 - 2);
    mixed += check_lemmas(simulate_reveal(n, k, 1 + rng.below(5), rng.next()));
  }
  CHECK(mixed.total() == 0);
}

TEST_CASE("lemma checks flag doctored traces") {
  auto trace = simulate_reveal(40, 10, 3, 5);
  trace.steps[3].y = 1.5;
  trace.steps[4].a_before = 20;
  trace.steps.back().x += 0.5;
  const auto c = check_lemmas(trace);
  CHECK(c.magnitude_violations == 1);
  CHECK(c.range_violations >= 1);
  CHECK(c.ratio_violations == 1);
  CHECK(c.terminal_violations == 1);
  trace.steps.back().quad_char = 1e6;
  CHECK(check_lemmas(trace).quad_char_violations == 1);
}

TEST_CASE("increments have conditional mean zero") {
  // Bucket by step index and the indicator of the previous reveal.
  struct Acc {
    double sum = 0, sum2 = 0;
    long count = 0;
  };
  std::map<std::pair<std::size_t, int>, Acc> buckets;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    const auto trace = simulate_reveal(20, 6, 2, derive_seed(4, s));
    int prev_w = -1;
    for (std::size_t l = 0; l < trace.steps.size(); ++l) {
      auto& acc = buckets[{l, prev_w}];
      acc.sum += trace.steps[l].y;
      acc.sum2 += trace.steps[l].y * trace.steps[l].y;
      ++acc.count;
      prev_w = trace.steps[l].w;
    }
  }
  std::size_t tested = 0;
  for (const auto& [key, acc] : buckets) {
    if (acc.count < 200) continue;
    const double m = acc.sum / acc.count;
    const double var = acc.sum2 / acc.count - m * m;
    if (var <= 0) {
      CHECK(std::abs(m) < 1e-12);
      continue;
    }
    CHECK(std::abs(m) <= 3 * std::sqrt(var / acc.count));
    ++tested;
  }
  CHECK(tested >= 10);
}

TEST_CASE("quadratic characteristic tracks the indicator variance") {
  // First step: vertex 0 hits S \ {0} with probability (k-1)/(n-1).
  const auto t = simulate_reveal(50, 8, 2, 1);
  const double p = 7.0 / 49;
  CHECK(t.steps[0].quad_char == doctest::Approx(p * (1 - p)));
  for (std::size_t l = 1; l < t.steps.size(); ++l) REQUIRE(t.steps[l].quad_char >= t.steps[l - 1].quad_char);

  // Var(X_N) equals the expected sum of conditional second moments of Y.
  double sum = 0, sum2 = 0, inc = 0;
  const int trials = 20000;
  for (int s = 0; s < trials; ++s) {
    const auto r = simulate_reveal(50, 8, 2, derive_seed(8, s));
    sum += r.terminal();
    sum2 += r.terminal() * r.terminal();
    inc += r.steps.back().increment_variance;
  }
  const double m = sum / trials;
  CHECK(sum2 / trials - m * m == doctest::Approx(inc / trials).epsilon(0.05));
  CHECK(m == doctest::Approx(2 * 28.0 / 49).epsilon(0.02));
}

TEST_CASE("martingale domain") {
  CHECK_THROWS_AS(simulate_reveal(41, 10, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(simulate_reveal(40, 20, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(simulate_reveal(40, 1, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(simulate_reveal(40, 5, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(empirical_tail(40, 5, 3, 0.5, 0, 1), InvalidArgument);
}

TEST_CASE("traces are reproducible and export to CSV") {
  const auto a = simulate_reveal(20, 4, 2, 99), b = simulate_reveal(20, 4, 2, 99);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t l = 0; l < a.steps.size(); ++l) CHECK(a.steps[l].x == b.steps[l].x);

  std::ostringstream out;
  write_trace_csv(a, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "l,matching,i,z,w,X,Y,a,b,quad_char,increment_variance");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == a.steps.size() + 1);
}

TEST_CASE("empirical tails") {
  const auto none = empirical_tail(40, 5, 3, 1e6, 500, 1);
  CHECK(none.exceedances == 0);
  CHECK(none.empirical_prob == 0.0);
  CHECK(none.consistent);

  const double delta = small_cut_delta(200, 2, 16);
  const auto small = empirical_tail(200, 2, 16, delta, 20000, 2);
  CHECK(small.bound.value == doctest::Approx(tail_bound_generic(200, 2, 16, delta).value));
  CHECK(small.empirical_prob <= small.bound.value);
  CHECK(small.p_value >= 0.01);
  CHECK(small.consistent);

  const auto mid = empirical_tail(60, 6, 4, 0.5, 10000, 3);
  const double expected = 15.0 * 4 / 59;
  CHECK(mid.bound.expected_interior == doctest::Approx(expected));
  CHECK(std::abs(mid.sample_mean - expected) <= 3 * std::sqrt(mid.sample_variance / mid.trials));
  CHECK(mid.empirical_prob > 0.0);
  CHECK(mid.empirical_prob <= std::min(1.0, mid.bound.value));
  CHECK(mid.consistent);

  // Trial t replays derive_seed(seed, t).
  const auto one = empirical_tail(60, 6, 4, 1e6, 1, 3);
  const auto g = sample_regular_multigraph(60, 4, derive_seed(3, 0));
  CHECK(one.sample_mean == interior_edge_weight(g, first_k(6)));
}
