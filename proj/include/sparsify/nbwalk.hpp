#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparsify/graph.hpp"

namespace sparsify {

// How the first step leaves the root.
enum class FirstStep {
  WeightProportional,  // edge {r, v} with probability w_rv / w(r)
  Uniform,             // each incident edge equally likely
};

const char* to_string(FirstStep step);

// Non-backtracking walk marginals Pr[r ->_l v] for l = 0..horizon.
struct WalkTable {
  Vertex root = 0;
  std::size_t horizon = 0;
  // layers[l] lists (v, probability) sorted by v, zero entries omitted.
  std::vector<std::vector<std::pair<Vertex, double>>> layers;
  // deficiency[l]: mass that hit a dead end on the step into layer l.
  std::vector<double> deficiency;

  double probability(std::size_t l, Vertex v) const;
  double mass(std::size_t l) const;
};

// H must be simple (see collapse_multiedges) and r must have an incident edge.
WalkTable nb_walk_probabilities(const WeightedGraph& h, Vertex r, std::size_t horizon,
                                FirstStep first = FirstStep::WeightProportional);

struct TestVectors {
  std::vector<double> f;  // sum_l (-1)^l sqrt(Pr_l)
  std::vector<double> h;  // sum_l sqrt(Pr_l)
};

TestVectors test_vectors(const WeightedGraph& h, Vertex r, std::size_t horizon,
                         FirstStep first = FirstStep::WeightProportional);
TestVectors test_vectors(const WalkTable& table, std::size_t n);

struct PseudoGirthReport {
  std::size_t g = 0;
  std::size_t v_prime = 0;         // |V'|: acyclic radius-g balls
  std::size_t v_double_prime = 0;  // |V''|: acyclic radius-2g balls
  std::size_t F = 0;               // n - |V''|
  std::size_t B = 0;               // max radius-g ball size
  std::vector<char> in_v_prime;
  std::vector<char> in_v_double_prime;
  std::vector<Vertex> violators;  // first vertices outside V'', capped
};

PseudoGirthReport pseudo_girth(const WeightedGraph& h, std::size_t g,
                               std::size_t violator_cap = 64);

struct CertificateOptions {
  FirstStep first_step = FirstStep::WeightProportional;
};

// Per-root quantities kept for the norm checks.
struct RootSummary {
  double f_norm2 = 0.0;
  double h_norm2 = 0.0;
  double walk_mass = 0.0;  // sum over l of the layer masses
};

struct AssumptionChecks {
  std::uint64_t min_combinatorial_degree = 0;
  double min_weighted_degree = 0.0;
  double max_weighted_degree = 0.0;
  double max_edge_weight = 0.0;
  bool combinatorial_degree_ok = false;  // >= d/4
  bool weighted_degree_ok = false;       // within [1 - 4/sqrt(d), 1 + 4/sqrt(d)]
  bool edge_weight_ok = false;           // <= 4/sqrt(d)
};

struct CertificateReport {
  std::size_t n = 0;
  std::size_t g = 0;
  double d = 0.0;
  FirstStep first_step = FirstStep::WeightProportional;

  double x_lh = 0.0;  // X . L_H
  double x_lk = 0.0;  // X . L_Kbar
  double y_lh = 0.0;
  double y_lk = 0.0;
  double y_dh = 0.0;              // Y . D_H
  double y_minus_x_ah = 0.0;      // (Y - X) . A_H
  double i_x = 0.0;               // I . X
  double i_y = 0.0;               // I . Y
  double x_j = 0.0;               // X . J
  double y_j = 0.0;               // Y . J
  double total_deficiency = 0.0;  // walk mass lost at dead ends, all roots

  double ratio = 0.0;  // (X.L_H / X.L_K) (Y.L_K / Y.L_H)
  double epsilon_lb = 0.0;

  PseudoGirthReport girth;
  AssumptionChecks assumptions;
  std::vector<RootSummary> roots;
};

// Lower bound on the spectral error of H against the clique with edge weight
// 1/n. H must be simple and connected with n >= 3.
CertificateReport certify_lower_bound(const WeightedGraph& h, std::size_t g, double d,
                                      const CertificateOptions& options = {});

}  // namespace sparsify
