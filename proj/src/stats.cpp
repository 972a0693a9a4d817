#include "sparsify/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sparsify/error.hpp"

namespace sparsify {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw InvalidArgument("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double median(std::span<const double> xs) {
  if (xs.empty()) throw InvalidArgument("median of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double binomial_upper_tail(std::uint64_t trials, std::uint64_t observed, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial probability must lie in [0, 1]");
  if (observed == 0) return 1.0;
  if (observed > trials) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double n = static_cast<double>(trials);
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(n + 1.0);
  double total = 0.0;
  for (std::uint64_t j = observed; j <= trials; ++j) {
    const double k = static_cast<double>(j);
    const double log_pmf = lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp + (n - k) * lq;
    const double term = std::exp(log_pmf);
    total += term;
    // Terms past the mode shrink geometrically.
    if (k > n * p && term < 1e-18 * total) break;
  }
  return std::min(1.0, total);
}

}  // namespace sparsify
