#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sparsify {

using Vertex = std::uint32_t;

// A bundle of parallel edges between u < v. `weight` is the accumulated weight
// of the whole bundle; `multiplicity` counts the parallel copies.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;
  std::uint32_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One endpoint's view of an incident bundle.
struct Neighbor {
  Vertex to;
  double weight;
  std::uint32_t multiplicity;
};

using Matching = std::vector<std::pair<Vertex, Vertex>>;

// Perfect matchings a multigraph was assembled from, in draw order. Every
// occurrence of a matching edge carries `unit_weight`.
struct MatchingDecomposition {
  std::vector<Matching> matchings;
  double unit_weight = 1.0;
};

// Undirected weighted multigraph on vertices 0..n-1. Immutable after
// construction: edges are sorted by (u, v), each pair appears once, weights are
// positive and there are no self-loops.
class WeightedGraph {
 public:
  // Accumulates edges, merging parallel copies into one bundle.
  class Builder {
   public:
    explicit Builder(std::size_t n);

    // Adds `multiplicity` parallel copies with total weight `weight`.
    Builder& add(Vertex a, Vertex b, double weight, std::uint32_t multiplicity = 1);

    WeightedGraph build() &&;

   private:
    std::size_t n_;
    std::vector<Edge> pending_;
  };

  WeightedGraph() = default;

  // Strict constructor: rejects duplicate pairs, u >= v, negative weights and
  // out-of-range endpoints. Zero-weight bundles are pruned.
  WeightedGraph(std::size_t n, std::vector<Edge> edges,
                std::optional<MatchingDecomposition> decomposition = std::nullopt);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  double weighted_degree(Vertex v) const { return weighted_degree_[v]; }
  std::uint64_t combinatorial_degree(Vertex v) const { return combinatorial_degree_[v]; }
  double total_weight() const;

  // True when no bundle has multiplicity above one.
  bool is_simple() const;
  bool is_connected() const;

  // Weight of the bundle {a, b}, or 0 when absent.
  double weight_between(Vertex a, Vertex b) const;

  // Weight w when every one of the C(n,2) pairs is present with weight w.
  std::optional<double> uniform_clique_weight() const;

  const std::optional<MatchingDecomposition>& decomposition() const { return decomposition_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void index();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> weighted_degree_;
  std::vector<std::uint64_t> combinatorial_degree_;
  std::optional<MatchingDecomposition> decomposition_;
};

struct DegreeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct DegreeReport {
  std::vector<double> weighted;
  std::vector<std::uint64_t> combinatorial;
  DegreeStats weighted_stats;
  DegreeStats combinatorial_stats;
};

WeightedGraph make_clique(std::size_t n, double weight);
WeightedGraph make_cycle(std::size_t n, double weight);

// Union of d independent uniform perfect matchings on n (even) vertices.
// Each matching is a Fisher-Yates shuffle of 0..n-1 paired consecutively.
WeightedGraph sample_regular_multigraph(std::size_t n, std::size_t d, std::uint64_t seed);

class Rng;
// The matchings sample_regular_multigraph draws for the same generator state.
std::vector<Matching> sample_matchings(std::size_t n, std::size_t d, Rng& rng);

WeightedGraph scale_weights(const WeightedGraph& g, double c);

// Union of the first d matchings of a graph that carries its decomposition.
WeightedGraph first_matchings_subgraph(const WeightedGraph& g, std::size_t d);

// Replaces each parallel bundle by a single edge of the same total weight.
WeightedGraph collapse_multiedges(const WeightedGraph& g);

DegreeReport degree_report(const WeightedGraph& g);

// Edge-list text format:
//   n <N>
//   <u> <v> <weight> <multiplicity>
// with '#' comment lines. Weights are written as shortest round-trip decimals.
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const WeightedGraph& g, std::ostream& out);
void write_edge_list(const WeightedGraph& g, const std::filesystem::path& path);

}  // namespace sparsify
