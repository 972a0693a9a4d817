#include "sparsify/martingale.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "sparsify/error.hpp"
#include "sparsify/rng.hpp"
#include "sparsify/stats.hpp"

namespace sparsify {

namespace {

void require_domain(std::size_t n, std::size_t k, std::size_t d) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("martingale needs an even n >= 4");
  if (k < 2 || 2 * k >= n) throw InvalidArgument("martingale needs 2 <= k < n/2");
  if (d == 0) throw InvalidArgument("degree must be positive");
}

double phi(std::int64_t a, std::int64_t b) {
  if (a <= 1) return 0.0;
  return phi_matching(static_cast<double>(a), static_cast<double>(b));
}

std::uint64_t interior_count(const std::vector<Matching>& matchings, std::size_t k) {
  std::uint64_t count = 0;
  for (const Matching& m : matchings) {
    for (auto [u, v] : m) count += (u < k && v < k);
  }
  return count;
}

}  // namespace

LemmaCheck& LemmaCheck::operator+=(const LemmaCheck& other) {
  steps += other.steps;
  ratio_violations += other.ratio_violations;
  range_violations += other.range_violations;
  magnitude_violations += other.magnitude_violations;
  quad_char_violations += other.quad_char_violations;
  terminal_violations += other.terminal_violations;
  quad_char_bound = other.quad_char_bound;
  return *this;
}

RevealTrace simulate_reveal(std::size_t n, std::size_t k, std::size_t d, std::uint64_t seed) {
  require_domain(n, k, d);
  Rng rng(seed);
  const auto matchings = sample_matchings(n, d, rng);

  RevealTrace trace;
  trace.n = n;
  trace.k = k;
  trace.d = d;
  trace.seed = seed;
  const auto kk = static_cast<std::int64_t>(k), nn = static_cast<std::int64_t>(n);
  const double fresh = phi(kk, nn);
  trace.x0 = static_cast<double>(d) * fresh;
  trace.steps.reserve(d * (k - 1));

  std::vector<Vertex> partner(n);
  std::vector<char> matched(n);
  double revealed = 0.0, quad = 0.0, second_moment = 0.0;
  double x_prev = trace.x0;
  for (std::size_t m = 0; m < d; ++m) {
    for (auto [u, v] : matchings[m]) {
      partner[u] = v;
      partner[v] = u;
    }
    std::fill(matched.begin(), matched.end(), 0);
    std::int64_t a = kk, b = nn;
    const double later = static_cast<double>(d - m - 1) * fresh;
    for (Vertex i = 0; i + 1 < k; ++i) {
      RevealStep step;
      step.matching = m;
      step.i = i;
      step.z = partner[i];
      step.a_before = a;
      step.b_before = b;
      if (!matched[i]) {
        const double p = static_cast<double>(a - 1) / static_cast<double>(b - 1);
        const double base = phi(a, b);
        const double y_hit = a >= 2 ? 1.0 + phi(a - 2, b - 2) - base : 0.0;
        const double y_miss = phi(a - 1, b - 2) - base;
        quad += p * (1.0 - p);
        second_moment += p * y_hit * y_hit + (1.0 - p) * y_miss * y_miss;
        matched[i] = matched[step.z] = 1;
        if (step.z < k) {
          step.w = 1;
          revealed += 1.0;
          a -= 2;
        } else {
          a -= 1;
        }
        b -= 2;
      }
      step.a = a;
      step.b = b;
      step.x = revealed + phi(a, b) + later;
      step.y = step.x - x_prev;
      step.quad_char = quad;
      step.increment_variance = second_moment;
      x_prev = step.x;
      trace.steps.push_back(step);
    }
  }
  return trace;
}

LemmaCheck check_lemmas(const RevealTrace& trace) {
  constexpr double kTol = 1e-12;
  LemmaCheck check;
  const auto n = static_cast<double>(trace.n), k = static_cast<double>(trace.k);
  const auto kk = static_cast<std::int64_t>(trace.k), nn = static_cast<std::int64_t>(trace.n);
  check.quad_char_bound = k * (k - 1.0) * static_cast<double>(trace.d) / (n - 2.0 * k);
  for (const RevealStep& s : trace.steps) {
    ++check.steps;
    if (s.a_before * nn > kk * s.b_before || s.a * nn > kk * s.b) ++check.ratio_violations;
    if (std::abs(s.y) > 1.0 + kTol) ++check.magnitude_violations;
    const bool in_range = s.w == 1 ? (s.y >= 1.0 - 2.0 * k / n - kTol && s.y <= 1.0 + kTol)
                                   : (s.y >= -k / n - kTol && s.y <= kTol);
    if (!in_range) ++check.range_violations;
  }
  if (trace.quad_char() > check.quad_char_bound * (1.0 + kTol)) ++check.quad_char_violations;
  const double terminal = trace.terminal();
  if (std::abs(terminal - std::round(terminal)) > 1e-9) ++check.terminal_violations;
  return check;
}

void write_trace_csv(const RevealTrace& trace, std::ostream& out) {
  out << "l,matching,i,z,w,X,Y,a,b,quad_char,increment_variance\n";
  const auto precision = out.precision(17);
  out << 0 << ",,,,," << trace.x0 << ",," << trace.k << ',' << trace.n << ",0,0\n";
  for (std::size_t l = 0; l < trace.steps.size(); ++l) {
    const RevealStep& s = trace.steps[l];
    out << l + 1 << ',' << s.matching << ',' << s.i << ',' << s.z << ',' << s.w << ',' << s.x
        << ',' << s.y << ',' << s.a << ',' << s.b << ',' << s.quad_char << ','
        << s.increment_variance << '\n';
  }
  out.precision(precision);
}

EmpiricalTail empirical_tail(std::size_t n, std::size_t k, std::size_t d, double delta,
                             std::size_t trials, std::uint64_t seed) {
  require_domain(n, k, d);
  if (trials == 0) throw InvalidArgument("trials must be positive");
  EmpiricalTail out;
  out.trials = trials;
  out.bound = tail_bound_generic(n, k, static_cast<double>(d), delta);
  const double expected = out.bound.expected_interior;
  std::vector<double> samples;
  samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const auto e = static_cast<double>(interior_count(sample_matchings(n, d, rng), k));
    samples.push_back(e);
    if (std::abs(e - expected) >= delta * expected) ++out.exceedances;
  }
  out.empirical_prob = static_cast<double>(out.exceedances) / static_cast<double>(trials);
  out.sample_mean = mean(samples);
  out.sample_variance = sample_variance(samples);
  out.p_value = binomial_upper_tail(trials, out.exceedances, std::min(1.0, out.bound.value));
  out.consistent = out.p_value >= 0.01;
  return out;
}

}  // namespace sparsify
