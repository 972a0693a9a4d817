#pragma once

#include <cstdint>
#include <span>

namespace sparsify {

double mean(std::span<const double> xs);
// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);
// Median of a copy; the mean of the middle pair for even sizes.
double median(std::span<const double> xs);

// P[X >= observed] for X ~ Binomial(trials, p), summed in log space.
double binomial_upper_tail(std::uint64_t trials, std::uint64_t observed, double p);

}  // namespace sparsify
