#include "sparsify/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "sparsify/error.hpp"
#include "sparsify/rng.hpp"

namespace sparsify {

namespace {

void check_endpoints(std::size_t n, Vertex a, Vertex b) {
  if (a >= n || b >= n) {
    throw InvalidArgument("edge {" + std::to_string(a) + ", " + std::to_string(b) +
                          "} out of range for n = " + std::to_string(n));
  }
  if (a == b) {
    throw InvalidArgument("self-loop at vertex " + std::to_string(a));
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(std::begin(buf), std::end(buf), x);
  return std::string(buf, end);
}

}  // namespace

WeightedGraph::Builder::Builder(std::size_t n) : n_(n) {}

WeightedGraph::Builder& WeightedGraph::Builder::add(Vertex a, Vertex b, double weight,
                                                    std::uint32_t multiplicity) {
  check_endpoints(n_, a, b);
  if (!(weight >= 0.0)) throw InvalidArgument("negative or NaN edge weight");
  if (multiplicity == 0) throw InvalidArgument("multiplicity must be positive");
  if (a > b) std::swap(a, b);
  pending_.push_back({a, b, weight, multiplicity});
  return *this;
}

WeightedGraph WeightedGraph::Builder::build() && {
  std::stable_sort(pending_.begin(), pending_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  std::vector<Edge> merged;
  merged.reserve(pending_.size());
  for (const Edge& e : pending_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
      merged.back().multiplicity += e.multiplicity;
    } else {
      merged.push_back(e);
    }
  }
  return WeightedGraph(n_, std::move(merged));
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges,
                             std::optional<MatchingDecomposition> decomposition)
    : n_(n), edges_(std::move(edges)), decomposition_(std::move(decomposition)) {
  if (n_ == 0) throw InvalidArgument("graph needs at least one vertex");
  for (const Edge& e : edges_) {
    check_endpoints(n_, e.u, e.v);
    if (e.u > e.v) throw InvalidArgument("edge endpoints must satisfy u < v");
    if (!(e.weight >= 0.0)) throw InvalidArgument("negative or NaN edge weight");
    if (e.multiplicity == 0) throw InvalidArgument("multiplicity must be positive");
  }
  std::erase_if(edges_, [](const Edge& e) { return e.weight == 0.0; });
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InvalidArgument("duplicate edge {" + std::to_string(edges_[i].u) + ", " +
                            std::to_string(edges_[i].v) + "}");
    }
  }
  index();
}

void WeightedGraph::index() {
  offsets_.assign(n_ + 1, 0);
  weighted_degree_.assign(n_, 0.0);
  combinatorial_degree_.assign(n_, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight, e.multiplicity};
    weighted_degree_[e.u] += e.weight;
    combinatorial_degree_[e.u] += e.multiplicity;
  }
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.v]++] = {e.u, e.weight, e.multiplicity};
    weighted_degree_[e.v] += e.weight;
    combinatorial_degree_[e.v] += e.multiplicity;
  }
  for (Vertex v = 0; v < n_; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

bool WeightedGraph::is_simple() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.multiplicity == 1; });
}

bool WeightedGraph::is_connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : neighbors(v)) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++reached;
        stack.push_back(nb.to);
      }
    }
  }
  return reached == n_;
}

double WeightedGraph::weight_between(Vertex a, Vertex b) const {
  auto list = neighbors(a);
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Neighbor& nb, Vertex x) { return nb.to < x; });
  return (it != list.end() && it->to == b) ? it->weight : 0.0;
}

std::optional<double> WeightedGraph::uniform_clique_weight() const {
  if (n_ < 2 || edges_.size() != n_ * (n_ - 1) / 2) return std::nullopt;
  const double w = edges_.front().weight;
  for (const Edge& e : edges_) {
    if (e.weight != w) return std::nullopt;
  }
  return w;
}

WeightedGraph make_clique(std::size_t n, double weight) {
  if (n < 2) throw InvalidArgument("clique needs n >= 2");
  if (!(weight > 0.0)) throw InvalidArgument("clique weight must be positive");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, weight, 1});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph make_cycle(std::size_t n, double weight) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  if (!(weight > 0.0)) throw InvalidArgument("cycle weight must be positive");
  WeightedGraph::Builder builder(n);
  for (Vertex v = 0; v < n; ++v) builder.add(v, static_cast<Vertex>((v + 1) % n), weight);
  return std::move(builder).build();
}

std::vector<Matching> sample_matchings(std::size_t n, std::size_t d, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("perfect matchings need an even n >= 2");
  std::vector<Matching> matchings;
  matchings.reserve(d);
  std::vector<Vertex> perm(n);
  for (std::size_t m = 0; m < d; ++m) {
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    Matching matching;
    matching.reserve(n / 2);
    for (std::size_t j = 0; j < n; j += 2) {
      matching.emplace_back(std::min(perm[j], perm[j + 1]), std::max(perm[j], perm[j + 1]));
    }
    matchings.push_back(std::move(matching));
  }
  return matchings;
}

namespace {

WeightedGraph union_of(std::size_t n, std::span<const Matching> matchings, double unit_weight,
                       std::optional<MatchingDecomposition> decomposition) {
  std::vector<Edge> pending;
  for (const Matching& m : matchings) {
    for (auto [u, v] : m) pending.push_back({u, v, 0.0, 1});
  }
  std::sort(pending.begin(), pending.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  std::vector<Edge> merged;
  for (const Edge& e : pending) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      ++merged.back().multiplicity;
    } else {
      merged.push_back(e);
    }
  }
  // weight = multiplicity * unit_weight keeps scaling exact for dyadic factors.
  for (Edge& e : merged) e.weight = static_cast<double>(e.multiplicity) * unit_weight;
  return WeightedGraph(n, std::move(merged), std::move(decomposition));
}

}  // namespace

WeightedGraph sample_regular_multigraph(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("random regular multigraph needs an even n >= 2");
  if (d == 0) throw InvalidArgument("degree must be positive");
  Rng rng(seed);
  MatchingDecomposition decomposition{sample_matchings(n, d, rng), 1.0};
  auto matchings = decomposition.matchings;
  return union_of(n, matchings, 1.0, std::move(decomposition));
}

WeightedGraph scale_weights(const WeightedGraph& g, double c) {
  if (!(c > 0.0)) throw InvalidArgument("scale factor must be positive");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) e.weight *= c;
  auto decomposition = g.decomposition();
  if (decomposition) decomposition->unit_weight *= c;
  return WeightedGraph(g.vertex_count(), std::move(edges), std::move(decomposition));
}

WeightedGraph first_matchings_subgraph(const WeightedGraph& g, std::size_t d) {
  const auto& decomposition = g.decomposition();
  if (!decomposition) {
    throw UnsupportedInput("graph carries no matching decomposition");
  }
  if (d == 0 || d > decomposition->matchings.size()) {
    throw InvalidArgument("requested " + std::to_string(d) + " matchings but graph has " +
                          std::to_string(decomposition->matchings.size()));
  }
  std::span<const Matching> prefix(decomposition->matchings.data(), d);
  MatchingDecomposition kept{std::vector<Matching>(prefix.begin(), prefix.end()),
                             decomposition->unit_weight};
  return union_of(g.vertex_count(), prefix, decomposition->unit_weight, std::move(kept));
}

WeightedGraph collapse_multiedges(const WeightedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) e.multiplicity = 1;
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

DegreeReport degree_report(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  DegreeReport report;
  report.weighted.resize(n);
  report.combinatorial.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    report.weighted[v] = g.weighted_degree(v);
    report.combinatorial[v] = g.combinatorial_degree(v);
  }
  auto [wmin, wmax] = std::minmax_element(report.weighted.begin(), report.weighted.end());
  auto [cmin, cmax] = std::minmax_element(report.combinatorial.begin(), report.combinatorial.end());
  report.weighted_stats = {*wmin, *wmax,
                           std::accumulate(report.weighted.begin(), report.weighted.end(), 0.0) /
                               static_cast<double>(n)};
  report.combinatorial_stats = {
      static_cast<double>(*cmin), static_cast<double>(*cmax),
      static_cast<double>(std::accumulate(report.combinatorial.begin(),
                                          report.combinatorial.end(), std::uint64_t{0})) /
          static_cast<double>(n)};
  return report;
}

WeightedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  auto next_token = [](std::string_view& rest) {
    std::size_t start = rest.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) {
      rest = {};
      return std::string_view{};
    }
    rest.remove_prefix(start);
    std::size_t stop = rest.find_first_of(" \t\r");
    std::string_view token = rest.substr(0, stop);
    rest.remove_prefix(stop == std::string_view::npos ? rest.size() : stop);
    return token;
  };
  auto parse_int = [&](std::string_view token, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError("expected a non-negative integer, got '" + std::string(token) + "'",
                       line_no);
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    if (!n) {
      if (first != "n") throw ParseError("expected header 'n <N>'", line_no);
      std::uint64_t value = 0;
      std::string_view token = next_token(rest);
      if (token.empty()) throw ParseError("missing vertex count", line_no);
      parse_int(token, value);
      if (value == 0) throw ParseError("vertex count must be positive", line_no);
      if (!next_token(rest).empty()) throw ParseError("trailing tokens after header", line_no);
      n = value;
      continue;
    }
    std::string_view tokens[4] = {first, next_token(rest), next_token(rest), next_token(rest)};
    if (tokens[3].empty() || !next_token(rest).empty()) {
      throw ParseError("expected '<u> <v> <weight> <multiplicity>'", line_no);
    }
    std::uint64_t u = 0, v = 0, mult = 0;
    parse_int(tokens[0], u);
    parse_int(tokens[1], v);
    parse_int(tokens[3], mult);
    double weight = 0.0;
    auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), weight);
    if (ec != std::errc{} || ptr != tokens[2].data() + tokens[2].size() || !(weight >= 0.0)) {
      throw ParseError("bad weight '" + std::string(tokens[2]) + "'", line_no);
    }
    if (u >= v) throw ParseError("edge requires u < v", line_no);
    if (v >= *n) throw ParseError("vertex index out of range", line_no);
    if (mult == 0 || mult > UINT32_MAX) throw ParseError("multiplicity out of range", line_no);
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), weight,
                     static_cast<std::uint32_t>(mult)});
    edge_lines.push_back(line_no);
  }
  if (!n) throw ParseError("missing header 'n <N>'", line_no);

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges[a].u, edges[a].v) < std::tie(edges[b].u, edges[b].v);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Edge& a = edges[order[i - 1]];
    const Edge& b = edges[order[i]];
    if (a.u == b.u && a.v == b.v) {
      throw ParseError("duplicate edge {" + std::to_string(b.u) + ", " + std::to_string(b.v) + "}",
                       std::max(edge_lines[order[i - 1]], edge_lines[order[i]]));
    }
  }
  return WeightedGraph(*n, std::move(edges));
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(const WeightedGraph& g, std::ostream& out) {
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << ' ' << e.multiplicity << '\n';
  }
}

void write_edge_list(const WeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  write_edge_list(g, out);
}

}  // namespace sparsify
