#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sparsify/graph.hpp"

namespace sparsify {

enum class CutMode { Exhaustive, Sampled };

const char* to_string(CutMode mode);

// Largest n accepted by exhaustive enumeration (2^(n-1) - 1 cuts).
inline constexpr std::size_t kExhaustiveCutLimit = 30;

double cut_value(const WeightedGraph& g, std::span<const Vertex> subset);

// Total weight of bundles with both endpoints in the subset.
double interior_edge_weight(const WeightedGraph& g, std::span<const Vertex> subset);

struct CutErrorReport {
  // max |cut_H(S) / cut_G(S) - 1| over examined nonempty proper S.
  double epsilon = 0.0;
  std::vector<Vertex> witness;
  CutMode mode = CutMode::Exhaustive;
  // Sampled mode only sees part of the cut space, so epsilon is a lower bound.
  bool lower_bound = false;
  std::uint64_t subsets_examined = 0;
};

CutErrorReport cut_error_exhaustive(const WeightedGraph& h, const WeightedGraph& g);

struct CutSampling {
  std::size_t samples_per_size = 1000;
  // Sizes sampled beyond the always-included singletons and pairs. Empty
  // means every k in [3, n/2].
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
};

CutErrorReport cut_error_sampled(const WeightedGraph& h, const WeightedGraph& g,
                                 const CutSampling& sampling);

// Reference value for |S| = k in a profile.
enum class CutReference {
  // d * k * (n - k) / n, the linear-size normalization d*alpha*(1-alpha)*n.
  Balanced,
  // d * k * (n - k) / (n - 1), the exact expectation under G_Reg(n, d).
  Expectation,
};

struct CutProfileRow {
  std::size_t k = 0;
  double alpha = 0.0;
  double max_deviation = 0.0;  // signed
  double min_deviation = 0.0;  // signed
  std::optional<std::vector<Vertex>> argmax;
  std::uint64_t subsets_examined = 0;
};

struct CutProfile {
  std::vector<CutProfileRow> rows;  // ascending k, by default 1 .. floor(n/2)
  CutMode mode = CutMode::Exhaustive;
  CutReference reference = CutReference::Balanced;
  double degree = 0.0;

  // max over rows of max(|max_deviation|, |min_deviation|).
  double max_abs_deviation() const;
  // Throws InvalidArgument when k has no row.
  const CutProfileRow& row(std::size_t k) const;
};

struct CutProfileOptions {
  CutReference reference = CutReference::Balanced;
  // Exhaustive when n <= kExhaustiveCutLimit unless forced to sample.
  bool force_sampled = false;
  std::size_t samples_per_size = 1000;
  // Sizes to sample; empty means every k in [1, n/2]. Exhaustive profiles
  // always cover every size.
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
  // argmax subsets are stored for k up to this cap.
  std::size_t argmax_cap = 8;
};

// Per-size extremal signed deviations cut_H(S) / reference(k) - 1, where the
// smaller side of each unordered cut determines k.
CutProfile cut_profile(const WeightedGraph& h, double d, const CutProfileOptions& options = {});

// CSV with columns k, alpha, max_dev, min_dev, mode, samples.
void write_cut_profile_csv(const CutProfile& profile, std::ostream& out);

}  // namespace sparsify
