#include "sparsify/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sparsify/error.hpp"

namespace sparsify {

double erf(double x) { return std::erf(x); }

namespace {

// Giles' single-precision inverse error function; only used as a seed.
double erf_inv_seed(double y) {
  double w = -std::log((1.0 - y) * (1.0 + y));
  double p;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  return p * y;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_tail_domain(std::uint64_t n, std::uint64_t k, double d, double delta) {
  if (k < 2) throw DomainError("tail bounds need k >= 2");
  if (2 * k >= n) throw DomainError("tail bounds need k < n/2 (C is undefined otherwise)");
  if (!(d > 0.0)) throw DomainError("degree must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive and finite");
}

TailBound tail_frame(std::uint64_t n, std::uint64_t k, double d, double delta) {
  TailBound b;
  b.n = n;
  b.k = k;
  b.d = d;
  b.delta = delta;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  b.C = 2.0 * (nn - 1.0) / (nn - 2.0 * kk);
  b.expected_interior = kk * (kk - 1.0) / 2.0 * d / (nn - 1.0);
  return b;
}

void finish(TailBound& b) {
  b.log_value = std::numbers::ln2 - b.exponent;
  b.value = 2.0 * std::exp(-b.exponent);
}

}  // namespace

double erf_inv(double y) {
  if (std::isnan(y) || !(std::abs(y) < 1.0)) {
    throw DomainError("erf_inv needs an argument in the open interval (-1, 1)");
  }
  if (y == 0.0) return y;
  // Work on |y| so the result is odd bit for bit.
  const double t = std::abs(y);
  double x = erf_inv_seed(t);
  const double two_over_sqrt_pi = 2.0 / std::sqrt(std::numbers::pi);
  for (int iter = 0; iter < 6; ++iter) {
    const double f = std::erf(x) - t;
    const double fp = two_over_sqrt_pi * std::exp(-x * x);
    // Halley step; erf'' = -2x erf'.
    const double step = f / (fp + x * f);
    x -= step;
    if (std::abs(step) <= 1e-16 * std::abs(x)) break;
  }
  return std::copysign(x, y);
}

RSBound rs_bound(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  RSBound b;
  b.alpha = alpha;
  const double beta = 1.0 - alpha;
  const double product = alpha * beta;
  b.T = 4.0 * product;
  b.M = alpha - beta;
  const double z = erf_inv(b.M);
  const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);
  b.ground_state_bound = 8.0 * std::sqrt(product) * std::exp(-z * z) / sqrt_2pi;
  b.relative_error_bound = b.ground_state_bound / b.T;
  const double root = std::sqrt(2.0 * b.T);
  b.lambda_hat = b.M == 0.0 ? -root * std::sqrt(std::numbers::pi) / 2.0 : -root * z / b.M;
  return b;
}

double main_constant() { return 2.0 * std::sqrt(2.0 / std::numbers::pi); }

RamanujanEpsilon ramanujan_epsilon(double d) {
  if (!(d >= 2.0)) throw DomainError("the Ramanujan bound needs d >= 2");
  return {2.0 / std::sqrt(d), 2.0 * std::sqrt(d - 1.0) / d};
}

const char* to_string(TailRegime regime) {
  switch (regime) {
    case TailRegime::Generic: return "generic";
    case TailRegime::Taylor: return "taylor";
    case TailRegime::Loglinear: return "loglinear";
  }
  return "?";
}

TailBound tail_bound_generic(std::uint64_t n, std::uint64_t k, double d, double delta) {
  require_tail_domain(n, k, d, delta);
  TailBound b = tail_frame(n, k, d, delta);
  b.regime = TailRegime::Generic;
  b.exponent = b.expected_interior * ((delta + b.C) * std::log1p(delta / b.C) - delta);
  finish(b);
  return b;
}

TailBound tail_bound_regime(std::uint64_t n, std::uint64_t k, double d, double delta) {
  require_tail_domain(n, k, d, delta);
  if (100 * k > n) {
    throw OutOfRegime("regime bounds need k <= n/100 (got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  TailBound b = tail_frame(n, k, d, delta);
  const double kk = static_cast<double>(k);
  const double scale = kk * kk * d / static_cast<double>(n);
  if (delta / b.C < 1.0) {
    b.regime = TailRegime::Taylor;
    b.exponent = 2.0 / 25.0 * scale * delta * delta;
  } else {
    b.regime = TailRegime::Loglinear;
    b.exponent = 49.0 / 800.0 * scale * delta * std::log(delta);
  }
  finish(b);
  return b;
}

double small_cut_delta(std::uint64_t n, std::uint64_t k, double d) {
  if (k < 2) throw DomainError("small-cut delta needs k >= 2");
  if (100 * k > n) throw OutOfRegime("small-cut delta needs k <= n/100");
  if (!(d > 0.0)) throw DomainError("degree must be positive");
  return (static_cast<double>(n) / static_cast<double>(k) - 2.0) * 1.5 / std::sqrt(d);
}

double log_small_cut_budget(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("k exceeds n");
  return std::numbers::ln2 - 1.01 * log_binomial(static_cast<double>(n), static_cast<double>(k));
}

double phi_matching(double a, double b) {
  if (!(b >= 2.0)) throw DomainError("phi_matching needs b >= 2");
  if (!(a >= 0.0 && a <= b)) throw DomainError("phi_matching needs 0 <= a <= b");
  return a * (a - 1.0) / 2.0 / (b - 1.0);
}

double azuma_fan_bound(double x, double nu2) {
  if (!(x >= 0.0) || !(nu2 >= 0.0)) throw DomainError("azuma_fan_bound needs x, nu2 >= 0");
  if (x == 0.0) return 2.0;
  if (nu2 == 0.0) return 0.0;
  const double total = x + nu2;
  return 2.0 * std::exp(total * (std::log(nu2) - std::log(total)) + x);
}

double appendix_a1_slack(double delta, double C) {
  const double x = delta / C;
  if (x < 0.1) {
    // (1+x) ln(1+x) - x - x^2/3 = x^2/6 + sum_{t>=2} (-1)^(t+1) x^(t+1) / (t (t+1))
    double sum = x * x / 6.0;
    double power = x * x;
    for (int t = 2; t < 60; ++t) {
      power *= x;
      const double term = power / (static_cast<double>(t) * (t + 1));
      sum += (t % 2 == 1) ? term : -term;
      if (term < 1e-20 * sum) break;
    }
    return C * sum;
  }
  return (delta + C) * std::log1p(x) - delta - delta * delta / (3.0 * C);
}

double appendix_a2_slack(double delta, double C) {
  return (delta + C) * std::log1p(delta / C) - delta - delta * std::log(delta) / (2.0 * C);
}

namespace {

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

template <class Slack>
AppendixReport check(std::span<const std::pair<double, double>> points, Slack slack) {
  constexpr std::size_t kCap = 32;
  AppendixReport report;
  report.min_slack.slack = std::numeric_limits<double>::infinity();
  for (const auto& [delta, C] : points) {
    const AppendixPoint p{delta, C, slack(delta, C)};
    ++report.points;
    if (p.slack < report.min_slack.slack) report.min_slack = p;
    if (!(p.slack >= 0.0)) {
      ++report.violations;
      if (report.violating.size() < kCap) report.violating.push_back(p);
    }
  }
  return report;
}

}  // namespace

AppendixGrid default_appendix_grid(std::size_t per_axis) {
  AppendixGrid grid;
  const auto cs = log_space(0.1, 1e3, per_axis);
  const auto xs = log_space(1e-6, 1.0, per_axis);
  for (double C : cs) {
    for (double x : xs) grid.a1.emplace_back(x * C, C);
  }
  const auto axis = log_space(1.0, 1e6, per_axis);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) grid.a2.emplace_back(axis[i], axis[j]);
  }
  return grid;
}

AppendixCheck verify_appendix_inequalities(const AppendixGrid& grid) {
  return {check(grid.a1, appendix_a1_slack), check(grid.a2, appendix_a2_slack)};
}

}  // namespace sparsify
