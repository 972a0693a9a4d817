#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sparsify/bounds.hpp"
#include "sparsify/graph.hpp"

namespace sparsify {

// One reveal of the matched edge-vertex martingale: the partner z of vertex i
// in matching m.
struct RevealStep {
  std::size_t matching = 0;
  Vertex i = 0;
  Vertex z = 0;
  int w = 0;  // 1 when z is in S, z > i and i was still unmatched
  double x = 0.0;
  double y = 0.0;
  // Unmatched vertices of S and of V in the current matching, before and
  // after this reveal.
  std::int64_t a_before = 0, b_before = 0;
  std::int64_t a = 0, b = 0;
  double quad_char = 0.0;           // running sum of Var(W) given the past
  double increment_variance = 0.0;  // running sum of E[Y^2] given the past
};

struct RevealTrace {
  std::size_t n = 0, k = 0, d = 0;
  std::uint64_t seed = 0;
  double x0 = 0.0;  // d C(k, 2) / (n - 1)
  std::vector<RevealStep> steps;  // N = d (k - 1) entries

  double terminal() const { return steps.empty() ? x0 : steps.back().x; }
  double quad_char() const { return steps.empty() ? 0.0 : steps.back().quad_char; }
};

// S = {0, ..., k-1}. The matchings come from the same stream as
// sample_regular_multigraph(n, d, seed).
RevealTrace simulate_reveal(std::size_t n, std::size_t k, std::size_t d, std::uint64_t seed);

struct LemmaCheck {
  std::uint64_t steps = 0;
  std::uint64_t ratio_violations = 0;       // a/b <= k/n
  std::uint64_t range_violations = 0;       // per-case ranges of Y
  std::uint64_t magnitude_violations = 0;   // |Y| <= 1
  std::uint64_t quad_char_violations = 0;   // terminal <= k(k-1)d/(n-2k)
  std::uint64_t terminal_violations = 0;    // X_N integral
  double quad_char_bound = 0.0;

  std::uint64_t total() const {
    return ratio_violations + range_violations + magnitude_violations + quad_char_violations +
           terminal_violations;
  }
  LemmaCheck& operator+=(const LemmaCheck& other);
};

// Increment ranges are checked with a 1e-12 absolute allowance for rounding
// in the closed-form differences; the ratio check is exact integer arithmetic.
LemmaCheck check_lemmas(const RevealTrace& trace);

void write_trace_csv(const RevealTrace& trace, std::ostream& out);

struct EmpiricalTail {
  std::size_t trials = 0;
  std::uint64_t exceedances = 0;
  double empirical_prob = 0.0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  TailBound bound;
  // P[Binomial(trials, bound) >= exceedances]; the bound is consistent with the
  // data when this is at least 0.01.
  double p_value = 1.0;
  bool consistent = true;
};

// Fraction of trials with |e(S) - E e(S)| >= delta E e(S). Trial t uses
// derive_seed(seed, t).
EmpiricalTail empirical_tail(std::size_t n, std::size_t k, std::size_t d, double delta,
                             std::size_t trials, std::uint64_t seed);

}  // namespace sparsify
