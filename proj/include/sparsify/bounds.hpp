#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sparsify {

double erf(double x);
// Inverse of erf on (-1, 1); throws DomainError at or beyond +-1.
double erf_inv(double y);

struct RSBound {
  double alpha = 0.0;
  double T = 0.0;  // 4 alpha (1 - alpha)
  double M = 0.0;  // 2 alpha - 1
  double lambda_hat = 0.0;
  double ground_state_bound = 0.0;
  double relative_error_bound = 0.0;  // ground_state_bound / T
};

// Replica-symmetric ground-state bound at density alpha in (0, 1).
RSBound rs_bound(double alpha);

// 2 sqrt(2 / pi).
double main_constant();

struct RamanujanEpsilon {
  double asymptotic = 0.0;  // 2 / sqrt(d)
  double exact = 0.0;       // 2 sqrt(d - 1) / d
};

RamanujanEpsilon ramanujan_epsilon(double d);

enum class TailRegime { Generic, Taylor, Loglinear };
const char* to_string(TailRegime regime);

struct TailBound {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double d = 0.0;
  double delta = 0.0;
  double C = 0.0;                  // 2 (n - 1) / (n - 2k)
  double expected_interior = 0.0;  // C(k, 2) d / (n - 1)
  TailRegime regime = TailRegime::Generic;
  double exponent = 0.0;  // value = 2 exp(-exponent)
  double value = 0.0;
  double log_value = 0.0;  // ln(value), finite even when value underflows
};

TailBound tail_bound_generic(std::uint64_t n, std::uint64_t k, double d, double delta);

// Taylor regime when delta / C < 1, loglinear otherwise. Requires
// 2 <= k <= n / 100.
TailBound tail_bound_regime(std::uint64_t n, std::uint64_t k, double d, double delta);

// (n / k - 2) * 1.5 / sqrt(d), for 2 <= k <= n / 100.
double small_cut_delta(std::uint64_t n, std::uint64_t k, double d);

// ln of 2 C(n, k)^(-1.01), the per-size failure budget of the small-cut union bound.
double log_small_cut_budget(std::uint64_t n, std::uint64_t k);

// C(a, 2) / (b - 1): expected pairs of a marked vertices matched together in a
// uniform perfect matching of b vertices.
double phi_matching(double a, double b);

// 2 (nu2 / (x + nu2))^(x + nu2) e^x.
double azuma_fan_bound(double x, double nu2);

struct AppendixPoint {
  double delta = 0.0;
  double C = 0.0;
  double slack = 0.0;  // left side minus right side
};

struct AppendixReport {
  std::size_t points = 0;
  std::size_t violations = 0;
  AppendixPoint min_slack;
  std::vector<AppendixPoint> violating;  // capped
};

// (delta + C) ln(delta / C + 1) >= delta + delta^2 / (3C) for delta / C <= 1.
double appendix_a1_slack(double delta, double C);
// (delta + C) ln(delta / C + 1) - delta >= delta ln(delta) / (2C) for delta >= C >= 1.
double appendix_a2_slack(double delta, double C);

struct AppendixGrid {
  std::vector<std::pair<double, double>> a1;  // (delta, C)
  std::vector<std::pair<double, double>> a2;
};

// Log-spaced default grids: a1 with delta/C in (0, 1], C in [0.1, 1e3]; a2 with
// 1 <= C <= delta <= 1e6.
AppendixGrid default_appendix_grid(std::size_t per_axis = 200);

struct AppendixCheck {
  AppendixReport a1;
  AppendixReport a2;
};

AppendixCheck verify_appendix_inequalities(const AppendixGrid& grid);

}  // namespace sparsify
