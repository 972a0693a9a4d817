#include "sparsify/nbwalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sparsify/error.hpp"

namespace sparsify {

const char* to_string(FirstStep step) {
  return step == FirstStep::Uniform ? "uniform" : "weight";
}

double WalkTable::probability(std::size_t l, Vertex v) const {
  const auto& layer = layers.at(l);
  const auto it = std::lower_bound(layer.begin(), layer.end(), v,
                                   [](const auto& entry, Vertex x) { return entry.first < x; });
  return (it != layer.end() && it->first == v) ? it->second : 0.0;
}

double WalkTable::mass(std::size_t l) const {
  double total = 0.0;
  for (const auto& [v, p] : layers.at(l)) total += p;
  return total;
}

namespace {

void require_simple(const WeightedGraph& h) {
  if (!h.is_simple()) {
    throw UnsupportedInput("non-backtracking walks need a simple graph; collapse parallel edges first");
  }
}

// Directed edges ("arcs") numbered in CSR order: arc offsets[u] + i is u's
// i-th neighbor.
struct ArcIndex {
  explicit ArcIndex(const WeightedGraph& h) : offsets(h.vertex_count() + 1, 0) {
    const std::size_t n = h.vertex_count();
    for (Vertex v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + h.neighbors(v).size();
    head.resize(offsets[n]);
    weight.resize(offsets[n]);
    // Outgoing weight of the head vertex excluding the reverse arc.
    onward.resize(offsets[n]);
    for (Vertex u = 0; u < n; ++u) {
      const auto nbrs = h.neighbors(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        head[offsets[u] + i] = nbrs[i].to;
        weight[offsets[u] + i] = nbrs[i].weight;
      }
    }
    for (Vertex u = 0; u < n; ++u) {
      for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) {
        const Vertex v = head[a];
        double sum = 0.0;
        for (std::size_t b = offsets[v]; b < offsets[v + 1]; ++b) {
          if (head[b] != u) sum += weight[b];
        }
        onward[a] = sum;
      }
    }
  }

  std::vector<std::size_t> offsets;
  std::vector<Vertex> head;
  std::vector<double> weight;
  std::vector<double> onward;
};

// Sparse accumulator over a dense index space.
struct Accumulator {
  explicit Accumulator(std::size_t size) : value(size, 0.0), seen(size, 0) {}

  void add(std::size_t i, double x) {
    if (!seen[i]) {
      seen[i] = 1;
      touched.push_back(i);
    }
    value[i] += x;
  }

  void clear() {
    for (std::size_t i : touched) {
      value[i] = 0.0;
      seen[i] = 0;
    }
    touched.clear();
  }

  std::vector<double> value;
  std::vector<char> seen;
  std::vector<std::size_t> touched;
};

class Walker {
 public:
  explicit Walker(const WeightedGraph& h)
      : h_(h), arcs_(h), cur_(arcs_.head.size()), next_(arcs_.head.size()), marginal_(h.vertex_count()) {}

  WalkTable run(Vertex r, std::size_t horizon, FirstStep first) {
    const std::size_t n = h_.vertex_count();
    if (r >= n) throw InvalidArgument("root " + std::to_string(r) + " out of range");
    const std::size_t out_begin = arcs_.offsets[r], out_end = arcs_.offsets[r + 1];
    if (out_begin == out_end || !(h_.weighted_degree(r) > 0.0)) {
      throw InvalidArgument("root " + std::to_string(r) + " is isolated");
    }

    WalkTable table;
    table.root = r;
    table.horizon = horizon;
    table.layers.resize(horizon + 1);
    table.deficiency.assign(horizon + 1, 0.0);
    table.layers[0] = {{r, 1.0}};
    if (horizon == 0) return table;

    const double degree = static_cast<double>(out_end - out_begin);
    double total = 0.0;
    for (std::size_t a = out_begin; a < out_end; ++a) total += arcs_.weight[a];
    cur_.clear();
    for (std::size_t a = out_begin; a < out_end; ++a) {
      cur_.add(a, first == FirstStep::Uniform ? 1.0 / degree : arcs_.weight[a] / total);
    }
    emit(cur_, table.layers[1]);

    for (std::size_t l = 2; l <= horizon; ++l) {
      next_.clear();
      double lost = 0.0;
      for (std::size_t a : cur_.touched) {
        const double p = cur_.value[a];
        if (p == 0.0) continue;
        const Vertex v = arcs_.head[a];
        const double onward = arcs_.onward[a];
        if (!(onward > 0.0)) {
          lost += p;
          continue;
        }
        const Vertex back = arc_tail(a);
        for (std::size_t b = arcs_.offsets[v]; b < arcs_.offsets[v + 1]; ++b) {
          if (arcs_.head[b] == back) continue;
          next_.add(b, p * arcs_.weight[b] / onward);
        }
      }
      table.deficiency[l] = lost;
      std::swap(cur_, next_);
      emit(cur_, table.layers[l]);
    }
    cur_.clear();
    next_.clear();
    return table;
  }

 private:
  Vertex arc_tail(std::size_t a) const {
    const auto it = std::upper_bound(arcs_.offsets.begin(), arcs_.offsets.end(), a);
    return static_cast<Vertex>(it - arcs_.offsets.begin() - 1);
  }

  void emit(const Accumulator& arcs, std::vector<std::pair<Vertex, double>>& layer) {
    marginal_.clear();
    for (std::size_t a : arcs.touched) {
      if (arcs.value[a] != 0.0) marginal_.add(arcs_.head[a], arcs.value[a]);
    }
    layer.clear();
    for (std::size_t v : marginal_.touched) {
      layer.emplace_back(static_cast<Vertex>(v), marginal_.value[v]);
    }
    std::sort(layer.begin(), layer.end());
  }

  const WeightedGraph& h_;
  ArcIndex arcs_;
  Accumulator cur_, next_, marginal_;
};

}  // namespace

WalkTable nb_walk_probabilities(const WeightedGraph& h, Vertex r, std::size_t horizon,
                                FirstStep first) {
  require_simple(h);
  return Walker(h).run(r, horizon, first);
}

TestVectors test_vectors(const WalkTable& table, std::size_t n) {
  TestVectors out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t l = 0; l < table.layers.size(); ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    for (const auto& [v, p] : table.layers[l]) {
      const double s = std::sqrt(p);
      out.f.at(v) += sign * s;
      out.h.at(v) += s;
    }
  }
  return out;
}

TestVectors test_vectors(const WeightedGraph& h, Vertex r, std::size_t horizon, FirstStep first) {
  return test_vectors(nb_walk_probabilities(h, r, horizon, first), h.vertex_count());
}

PseudoGirthReport pseudo_girth(const WeightedGraph& h, std::size_t g, std::size_t violator_cap) {
  require_simple(h);
  const std::size_t n = h.vertex_count();
  PseudoGirthReport report;
  report.g = g;
  report.in_v_prime.assign(n, 0);
  report.in_v_double_prime.assign(n, 0);

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<Vertex> order;
  const std::size_t outer = 2 * g;
  for (Vertex r = 0; r < n; ++r) {
    order.clear();
    order.push_back(r);
    dist[r] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const Vertex u = order[head];
      if (dist[u] == outer) continue;
      for (const Neighbor& nb : h.neighbors(u)) {
        if (dist[nb.to] == kUnseen) {
          dist[nb.to] = dist[u] + 1;
          order.push_back(nb.to);
        }
      }
    }
    // BFS order is sorted by distance, so each radius is a prefix.
    std::size_t inner_vertices = 0, inner_twice_edges = 0, outer_twice_edges = 0;
    for (Vertex u : order) {
      const bool inner = dist[u] <= g;
      if (inner) ++inner_vertices;
      for (const Neighbor& nb : h.neighbors(u)) {
        if (dist[nb.to] == kUnseen) continue;
        ++outer_twice_edges;
        if (inner && dist[nb.to] <= g) ++inner_twice_edges;
      }
    }
    const bool acyclic_inner = inner_twice_edges / 2 + 1 == inner_vertices;
    const bool acyclic_outer = outer_twice_edges / 2 + 1 == order.size();
    report.in_v_prime[r] = acyclic_inner;
    report.in_v_double_prime[r] = acyclic_outer;
    report.v_prime += acyclic_inner;
    report.v_double_prime += acyclic_outer;
    if (!acyclic_outer && report.violators.size() < violator_cap) report.violators.push_back(r);
    report.B = std::max(report.B, inner_vertices);
    for (Vertex u : order) dist[u] = kUnseen;
  }
  report.F = n - report.v_double_prime;
  return report;
}

CertificateReport certify_lower_bound(const WeightedGraph& h, std::size_t g, double d,
                                      const CertificateOptions& options) {
  const std::size_t n = h.vertex_count();
  if (n < 3) throw InvalidArgument("certificate needs n >= 3");
  if (!(d > 0.0)) throw InvalidArgument("nominal degree must be positive");
  require_simple(h);
  if (!h.is_connected()) throw InvalidArgument("certificate needs a connected graph");

  CertificateReport report;
  report.n = n;
  report.g = g;
  report.d = d;
  report.first_step = options.first_step;
  report.girth = pseudo_girth(h, g);
  report.roots.resize(n);

  auto& checks = report.assumptions;
  checks.min_combinatorial_degree = std::numeric_limits<std::uint64_t>::max();
  checks.min_weighted_degree = std::numeric_limits<double>::infinity();
  checks.max_weighted_degree = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    checks.min_combinatorial_degree = std::min(checks.min_combinatorial_degree, h.combinatorial_degree(v));
    checks.min_weighted_degree = std::min(checks.min_weighted_degree, h.weighted_degree(v));
    checks.max_weighted_degree = std::max(checks.max_weighted_degree, h.weighted_degree(v));
  }
  for (const Edge& e : h.edges()) checks.max_edge_weight = std::max(checks.max_edge_weight, e.weight);
  const double band = 4.0 / std::sqrt(d);
  checks.combinatorial_degree_ok = static_cast<double>(checks.min_combinatorial_degree) >= d / 4.0;
  checks.weighted_degree_ok =
      checks.min_weighted_degree >= 1.0 - band && checks.max_weighted_degree <= 1.0 + band;
  checks.edge_weight_ok = checks.max_edge_weight <= band;

  Walker walker(h);
  std::vector<double> f(n, 0.0), hv(n, 0.0);
  std::vector<Vertex> support;
  std::vector<char> in_support(n, 0);
  const double nn = static_cast<double>(n);
  for (Vertex r = 0; r < n; ++r) {
    const WalkTable table = walker.run(r, g, options.first_step);
    RootSummary& root = report.roots[r];
    for (std::size_t l = 0; l <= g; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      for (const auto& [v, p] : table.layers[l]) {
        if (!in_support[v]) {
          in_support[v] = 1;
          support.push_back(v);
        }
        const double s = std::sqrt(p);
        f[v] += sign * s;
        hv[v] += s;
        root.walk_mass += p;
      }
      report.total_deficiency += table.deficiency[l];
    }
    std::sort(support.begin(), support.end());

    double f2 = 0.0, h2 = 0.0, fsum = 0.0, hsum = 0.0;
    double f_deg = 0.0, h_deg = 0.0, f_adj = 0.0, h_adj = 0.0;
    for (Vertex u : support) {
      const double fu = f[u], hu = hv[u];
      f2 += fu * fu;
      h2 += hu * hu;
      fsum += fu;
      hsum += hu;
      const double wu = h.weighted_degree(u);
      f_deg += wu * fu * fu;
      h_deg += wu * hu * hu;
      double fa = 0.0, ha = 0.0;
      for (const Neighbor& nb : h.neighbors(u)) {
        fa += nb.weight * f[nb.to];
        ha += nb.weight * hv[nb.to];
      }
      f_adj += fu * fa;
      h_adj += hu * ha;
    }
    root.f_norm2 = f2;
    root.h_norm2 = h2;
    report.x_lh += f_deg - f_adj;
    report.y_lh += h_deg - h_adj;
    report.x_lk += f2 - fsum * fsum / nn;
    report.y_lk += h2 - hsum * hsum / nn;
    report.y_dh += h_deg;
    report.y_minus_x_ah += h_adj - f_adj;
    report.i_x += f2;
    report.i_y += h2;
    report.x_j += fsum * fsum;
    report.y_j += hsum * hsum;

    for (Vertex u : support) {
      f[u] = hv[u] = 0.0;
      in_support[u] = 0;
    }
    support.clear();
  }

  // Zero up to roundoff: every h_r (or f_r) is constant, e.g. K_5 at g = 2.
  constexpr double kRel = 1e-12;
  if (!(report.y_lh > kRel * report.y_dh)) {
    throw DegenerateInput("Y . L_H is not positive; the certificate ratio is undefined");
  }
  if (!(report.x_lk > kRel * report.i_x)) {
    throw DegenerateInput("X . L_Kbar is not positive; the certificate ratio is undefined");
  }
  report.ratio = (report.x_lh / report.x_lk) * (report.y_lk / report.y_lh);
  report.epsilon_lb = std::max(0.0, (report.ratio - 1.0) / (report.ratio + 1.0));
  return report;
}

}  // namespace sparsify
