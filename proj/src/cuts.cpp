#include "sparsify/cuts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "sparsify/error.hpp"
#include "sparsify/rng.hpp"

namespace sparsify {

const char* to_string(CutMode mode) {
  return mode == CutMode::Exhaustive ? "exhaustive" : "sampled";
}

namespace {

std::vector<char> membership(std::size_t n, std::span<const Vertex> subset) {
  std::vector<char> mask(n, 0);
  for (Vertex v : subset) {
    if (v >= n) throw InvalidArgument("subset vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

std::vector<Vertex> members(const std::vector<char>& mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

// Evaluates cut weights of one graph, using the closed form w*s*(n-s) when the
// graph is a uniform clique.
class CutEvaluator {
 public:
  explicit CutEvaluator(const WeightedGraph& g)
      : g_(g), clique_weight_(g.uniform_clique_weight()) {}

  double full(const std::vector<char>& mask, std::size_t size) const {
    if (clique_weight_) {
      return *clique_weight_ * static_cast<double>(size) *
             static_cast<double>(g_.vertex_count() - size);
    }
    double cut = 0.0;
    for (const Edge& e : g_.edges()) {
      if (mask[e.u] != mask[e.v]) cut += e.weight;
    }
    return cut;
  }

  // Cut of a subset given as a member list plus its mask; cost is the total
  // degree of the members.
  double of_members(std::span<const Vertex> subset, const std::vector<char>& mask) const {
    if (clique_weight_) {
      return *clique_weight_ * static_cast<double>(subset.size()) *
             static_cast<double>(g_.vertex_count() - subset.size());
    }
    double cut = 0.0;
    for (Vertex u : subset) {
      for (const Neighbor& nb : g_.neighbors(u)) {
        if (!mask[nb.to]) cut += nb.weight;
      }
    }
    return cut;
  }

  // Change in cut weight when v changes sides, evaluated before the flip.
  double flip_delta(const std::vector<char>& mask, Vertex v, std::size_t size_before) const {
    if (clique_weight_) {
      const auto n = static_cast<double>(g_.vertex_count());
      const auto s = static_cast<double>(size_before);
      const double s_after = mask[v] ? s - 1 : s + 1;
      return *clique_weight_ * (s_after * (n - s_after) - s * (n - s));
    }
    double delta = 0.0;
    for (const Neighbor& nb : g_.neighbors(v)) {
      delta += (mask[nb.to] == mask[v]) ? nb.weight : -nb.weight;
    }
    return delta;
  }

  double total_weight() const { return g_.total_weight(); }

 private:
  const WeightedGraph& g_;
  std::optional<double> clique_weight_;
};

void require_same_vertices(const WeightedGraph& h, const WeightedGraph& g) {
  if (h.vertex_count() != g.vertex_count()) {
    throw InvalidArgument("graphs have different vertex counts (" +
                          std::to_string(h.vertex_count()) + " vs " +
                          std::to_string(g.vertex_count()) + ")");
  }
}

std::string describe(std::span<const Vertex> subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ",";
    if (i == 16) {
      out += "...";
      break;
    }
    out += std::to_string(subset[i]);
  }
  return out + "}";
}

// Visits every unordered nonempty proper cut once: S always contains vertex 0
// and the remaining n-1 memberships follow a binary reflected Gray code.
// The visitor receives (|S|, mask, cut values...). Incremental sums are
// re-synchronised from scratch periodically to bound rounding drift.
template <class Visit>
void scan_cuts(std::span<const CutEvaluator* const> graphs, std::size_t n, Visit&& visit) {
  constexpr std::uint64_t kResync = 1u << 12;
  std::vector<char> mask(n, 0);
  mask[0] = 1;
  std::size_t size = 1;
  std::vector<double> cuts(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) cuts[i] = graphs[i]->full(mask, size);
  visit(size, mask, std::span<const double>(cuts));

  const std::uint64_t steps = (std::uint64_t{1} << (n - 1)) - 1;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    const auto v = static_cast<Vertex>(std::countr_zero(step) + 1);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      cuts[i] += graphs[i]->flip_delta(mask, v, size);
    }
    size += mask[v] ? -1 : 1;
    mask[v] ^= 1;
    if (step % kResync == 0) {
      for (std::size_t i = 0; i < graphs.size(); ++i) cuts[i] = graphs[i]->full(mask, size);
    }
    if (size == n) continue;
    visit(size, mask, std::span<const double>(cuts));
  }
}

long double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0L;
  k = std::min(k, n - k);
  long double value = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  }
  return std::round(value);
}

// Calls visit(members) for every k-subset of {first..n-1} extended by `fixed`.
template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, std::span<const Vertex> fixed,
                          Vertex first, Visit&& visit) {
  std::vector<Vertex> subset(fixed.begin(), fixed.end());
  const std::size_t base = subset.size();
  const std::size_t free = k - base;
  const std::size_t pool = n - first;
  if (free > pool) return;
  std::vector<Vertex> idx(free);
  std::iota(idx.begin(), idx.end(), first);
  subset.resize(k);
  while (true) {
    std::copy(idx.begin(), idx.end(), subset.begin() + static_cast<std::ptrdiff_t>(base));
    visit(std::span<const Vertex>(subset));
    std::size_t i = free;
    while (i > 0 && idx[i - 1] == n - free + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < free; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Draws `count` uniform k-subsets (partial Fisher-Yates over a persistent
// permutation), or enumerates all of them when count >= C(n, k). For
// k = n/2 enumeration keeps only subsets containing vertex 0, matching the
// exhaustive convention.
template <class Visit>
std::uint64_t visit_subsets_of_size(std::size_t n, std::size_t k, std::size_t count, Rng& rng,
                                    std::vector<Vertex>& perm, Visit&& visit) {
  const bool halves = (2 * k == n);
  const long double total = halves ? binomial(n - 1, k - 1) : binomial(n, k);
  if (static_cast<long double>(count) >= total) {
    std::uint64_t seen = 0;
    auto counted = [&](std::span<const Vertex> s) {
      ++seen;
      visit(s);
    };
    if (halves) {
      const Vertex zero[1] = {0};
      for_each_combination(n, k, zero, 1, counted);
    } else {
      for_each_combination(n, k, {}, 0, counted);
    }
    return seen;
  }
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(perm[i], perm[i + rng.below(n - i)]);
    }
    visit(std::span<const Vertex>(perm.data(), k));
  }
  return count;
}

double reference_cut(CutReference reference, double d, std::size_t n, std::size_t k) {
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double denom = reference == CutReference::Balanced ? nn : nn - 1.0;
  return d * kk * (nn - kk) / denom;
}

}  // namespace

double cut_value(const WeightedGraph& g, std::span<const Vertex> subset) {
  const auto mask = membership(g.vertex_count(), subset);
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (mask[e.u] != mask[e.v]) cut += e.weight;
  }
  return cut;
}

double interior_edge_weight(const WeightedGraph& g, std::span<const Vertex> subset) {
  const auto mask = membership(g.vertex_count(), subset);
  double inside = 0.0;
  for (const Edge& e : g.edges()) {
    if (mask[e.u] && mask[e.v]) inside += e.weight;
  }
  return inside;
}

CutErrorReport cut_error_exhaustive(const WeightedGraph& h, const WeightedGraph& g) {
  require_same_vertices(h, g);
  const std::size_t n = h.vertex_count();
  if (n > kExhaustiveCutLimit) {
    throw SizeLimit("exhaustive cut enumeration is limited to n <= " +
                    std::to_string(kExhaustiveCutLimit) + " (got " + std::to_string(n) +
                    "); use sampled mode");
  }
  CutErrorReport report;
  report.mode = CutMode::Exhaustive;
  if (n < 2) return report;

  CutEvaluator eh(h), eg(g);
  const CutEvaluator* graphs[] = {&eh, &eg};
  const double zero_tol = 1e-12 * std::max(1.0, g.total_weight());
  scan_cuts(graphs, n, [&](std::size_t, const std::vector<char>& mask,
                           std::span<const double> cuts) {
    ++report.subsets_examined;
    if (cuts[1] <= zero_tol) {
      throw DegenerateInput("reference cut vanishes at S = " + describe(members(mask)));
    }
    const double dev = std::abs(cuts[0] / cuts[1] - 1.0);
    if (dev > report.epsilon || report.witness.empty()) {
      report.epsilon = dev;
      report.witness = members(mask);
    }
  });
  return report;
}

CutErrorReport cut_error_sampled(const WeightedGraph& h, const WeightedGraph& g,
                                 const CutSampling& sampling) {
  require_same_vertices(h, g);
  const std::size_t n = h.vertex_count();
  CutErrorReport report;
  report.mode = CutMode::Sampled;
  report.lower_bound = true;
  if (n < 2) return report;

  CutEvaluator eh(h), eg(g);
  const double zero_tol = 1e-12 * std::max(1.0, g.total_weight());
  std::vector<char> mask(n, 0);
  auto consider = [&](std::span<const Vertex> subset) {
    for (Vertex v : subset) mask[v] = 1;
    const double ch = eh.of_members(subset, mask);
    const double cg = eg.of_members(subset, mask);
    for (Vertex v : subset) mask[v] = 0;
    ++report.subsets_examined;
    if (cg <= zero_tol) {
      std::vector<Vertex> s(subset.begin(), subset.end());
      std::sort(s.begin(), s.end());
      throw DegenerateInput("reference cut vanishes at S = " + describe(s));
    }
    const double dev = std::abs(ch / cg - 1.0);
    if (dev > report.epsilon || report.witness.empty()) {
      report.epsilon = dev;
      report.witness.assign(subset.begin(), subset.end());
      std::sort(report.witness.begin(), report.witness.end());
    }
  };

  // Singletons and pairs always, via cut(S) = sum of degrees - 2 * interior.
  for (Vertex u = 0; u < n; ++u) {
    const Vertex s[1] = {u};
    consider(s);
  }
  if (n >= 3) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (n == 4 && u != 0) break;  // the two halves of an n=4 pair cut
        const double ch = h.weighted_degree(u) + h.weighted_degree(v) - 2.0 * h.weight_between(u, v);
        const double cg = g.weighted_degree(u) + g.weighted_degree(v) - 2.0 * g.weight_between(u, v);
        ++report.subsets_examined;
        if (cg <= zero_tol) {
          throw DegenerateInput("reference cut vanishes at S = {" + std::to_string(u) + "," +
                                std::to_string(v) + "}");
        }
        const double dev = std::abs(ch / cg - 1.0);
        if (dev > report.epsilon) {
          report.epsilon = dev;
          report.witness = {u, v};
        }
      }
    }
  }

  std::vector<std::size_t> sizes = sampling.sizes;
  if (sizes.empty()) {
    for (std::size_t k = 3; 2 * k <= n; ++k) sizes.push_back(k);
  }
  Rng rng(sampling.seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t k : sizes) {
    if (k == 0 || k >= n) throw InvalidArgument("sample size k must lie in [1, n-1]");
    if (k <= 2) continue;
    visit_subsets_of_size(n, k, sampling.samples_per_size, rng, perm, consider);
  }
  return report;
}

double CutProfile::max_abs_deviation() const {
  double best = 0.0;
  for (const auto& row : rows) {
    best = std::max({best, std::abs(row.max_deviation), std::abs(row.min_deviation)});
  }
  return best;
}

const CutProfileRow& CutProfile::row(std::size_t k) const {
  const auto it = std::lower_bound(rows.begin(), rows.end(), k,
                                   [](const CutProfileRow& r, std::size_t x) { return r.k < x; });
  if (it == rows.end() || it->k != k) {
    throw InvalidArgument("profile has no row for k = " + std::to_string(k));
  }
  return *it;
}

CutProfile cut_profile(const WeightedGraph& h, double d, const CutProfileOptions& options) {
  const std::size_t n = h.vertex_count();
  if (n < 2) throw InvalidArgument("cut profile needs n >= 2 (empty size range)");
  if (!(d > 0.0)) throw InvalidArgument("reference degree must be positive");

  CutProfile profile;
  profile.reference = options.reference;
  profile.degree = d;
  const std::size_t half = n / 2;
  const bool exhaustive = n <= kExhaustiveCutLimit && !options.force_sampled;
  std::vector<std::size_t> sizes;
  if (exhaustive || options.sizes.empty()) {
    for (std::size_t k = 1; k <= half; ++k) sizes.push_back(k);
  } else {
    sizes = options.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (sizes.front() == 0 || sizes.back() > half) {
      throw InvalidArgument("profile sizes must lie in [1, n/2]");
    }
  }
  // slot[k] is the row index of size k.
  std::vector<std::size_t> slot(half + 1, 0);
  std::vector<double> reference(half + 1);
  profile.rows.resize(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t k = sizes[i];
    slot[k] = i;
    auto& row = profile.rows[i];
    row.k = k;
    row.alpha = static_cast<double>(k) / static_cast<double>(n);
    row.max_deviation = -std::numeric_limits<double>::infinity();
    row.min_deviation = std::numeric_limits<double>::infinity();
    reference[k] = reference_cut(options.reference, d, n, k);
  }

  auto record = [&](std::size_t size, double cut, auto&& subset_of) {
    const std::size_t k = std::min(size, n - size);
    auto& row = profile.rows[slot[k]];
    ++row.subsets_examined;
    const double dev = cut / reference[k] - 1.0;
    if (dev > row.max_deviation) {
      row.max_deviation = dev;
      if (k <= options.argmax_cap) row.argmax = subset_of();
    }
    row.min_deviation = std::min(row.min_deviation, dev);
  };

  CutEvaluator eh(h);
  if (exhaustive) {
    profile.mode = CutMode::Exhaustive;
    const CutEvaluator* graphs[] = {&eh};
    scan_cuts(graphs, n, [&](std::size_t size, const std::vector<char>& mask,
                             std::span<const double> cuts) {
      record(size, cuts[0], [&] {
        // Report the smaller side.
        std::vector<char> side(mask);
        if (2 * size > n) {
          for (auto& bit : side) bit ^= 1;
        }
        return members(side);
      });
    });
  } else {
    profile.mode = CutMode::Sampled;
    Rng rng(options.seed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::vector<char> mask(n, 0);
    for (std::size_t k : sizes) {
      visit_subsets_of_size(n, k, options.samples_per_size, rng, perm,
                            [&](std::span<const Vertex> subset) {
                              for (Vertex v : subset) mask[v] = 1;
                              const double cut = eh.of_members(subset, mask);
                              for (Vertex v : subset) mask[v] = 0;
                              record(k, cut, [&] {
                                std::vector<Vertex> s(subset.begin(), subset.end());
                                std::sort(s.begin(), s.end());
                                return s;
                              });
                            });
    }
  }
  return profile;
}

void write_cut_profile_csv(const CutProfile& profile, std::ostream& out) {
  out << "k,alpha,max_dev,min_dev,mode,samples\n";
  const auto precision = out.precision(17);
  for (const auto& row : profile.rows) {
    out << row.k << ',' << row.alpha << ',' << row.max_deviation << ',' << row.min_deviation
        << ',' << to_string(profile.mode) << ',' << row.subsets_examined << '\n';
  }
  out.precision(precision);
}

}  // namespace sparsify
