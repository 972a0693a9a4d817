#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparsify/error.hpp"
#include "sparsify/report.hpp"
#include "sparsify/rng.hpp"

namespace sparsify {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool exhaustive = false;
  std::optional<std::size_t> samples;
};

void add_common(CLI::App* sub, Common& c, bool with_cut_mode) {
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--out", c.out, "Write the report to this path instead of stdout");
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  if (with_cut_mode) {
    auto* ex = sub->add_flag("--exhaustive", c.exhaustive, "Enumerate every cut (n <= 30)");
    auto* sa = sub->add_option("--samples", c.samples, "Sample N subsets per size");
    ex->excludes(sa);
  }
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument(std::string("malformed ") + what + ": '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_alpha_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument("alpha grid must read start:stop:step");
  const double start = parse_number<double>(parts[0], "alpha grid start");
  const double stop = parse_number<double>(parts[1], "alpha grid stop");
  const double step = parse_number<double>(parts[2], "alpha grid step");
  if (!(step > 0.0)) throw InvalidArgument("alpha grid step must be positive");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double a = start + static_cast<double>(i) * step;
    if (a > stop + 1e-9 * step) break;
    out.push_back(a);
    if (out.size() > 10'000'000) throw InvalidArgument("alpha grid too large");
  }
  return out;
}

std::vector<NkdPoint> parse_nkd(const std::string& text) {
  std::vector<NkdPoint> out;
  for (const auto& triple : split(text, ';')) {
    const auto parts = split(triple, ',');
    if (parts.size() != 3) throw InvalidArgument("(n,k,d) points must read n,k,d;n,k,d");
    out.push_back({parse_number<std::uint64_t>(parts[0], "n"), parse_number<std::uint64_t>(parts[1], "k"),
                   parse_number<std::uint64_t>(parts[2], "d")});
  }
  return out;
}

WeightedGraph load_reference(const std::string& path, std::optional<double> clique_weight,
                             std::size_t n) {
  if (clique_weight) return make_clique(n, *clique_weight);
  if (path.empty()) throw InvalidArgument("give a reference graph with --g or --clique");
  return read_edge_list(std::filesystem::path(path));
}

CutOptions cut_options(const Common& c, std::size_t n) {
  CutOptions options;
  if (c.samples) {
    options.mode = CutMode::Sampled;
    options.samples_per_size = *c.samples;
  } else if (c.exhaustive || n <= kExhaustiveCutLimit) {
    options.mode = CutMode::Exhaustive;
  } else {
    options.mode = CutMode::Sampled;
  }
  return options;
}

Json envelope(const std::string& command, Json config, Json result) {
  config["rng"] = std::string(Rng::kAlgorithm);
  return {{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_json(const Common& c, std::ostream& out, const Json& report) {
  Sink sink(c.out, out);
  sink.stream() << report.dump(2) << '\n';
}

void require_json(const Common& c, const char* command) {
  if (c.format != "json") {
    throw InvalidArgument(std::string(command) + " only writes JSON reports");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-regular cut and spectral sparsification laboratory", "sparsify-lab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common c;
  std::function<void()> action;

  // generate
  std::string kind = "regular";
  std::size_t n = 0, d = 0, k = 0, Delta = 16, g = 2, seeds = 20, trials = 1;
  double weight = 1.0, scale = 1.0;
  bool collapse = false;
  auto* gen = app.add_subcommand("generate", "Write a graph as an edge list");
  add_common(gen, c, false);
  gen->add_option("--kind", kind)->check(CLI::IsMember({"regular", "clique", "cycle"}))->capture_default_str();
  gen->add_option("--n", n, "Vertex count")->required();
  gen->add_option("--d", d, "Number of matchings (regular)");
  gen->add_option("--weight", weight, "Edge weight (clique, cycle)")->capture_default_str();
  gen->add_option("--scale", scale, "Weight multiplier (regular)")->capture_default_str();
  gen->add_flag("--collapse", collapse, "Merge parallel edges into simple edges");
  gen->callback([&] {
    action = [&] {
      WeightedGraph graph;
      if (kind == "regular") {
        if (d == 0) throw InvalidArgument("--d is required for regular graphs");
        graph = sample_regular_multigraph(n, d, c.seed);
        if (scale != 1.0) graph = scale_weights(graph, scale);
      } else if (kind == "clique") {
        graph = make_clique(n, weight);
      } else {
        graph = make_cycle(n, weight);
      }
      if (collapse) graph = collapse_multiedges(graph);
      Sink sink(c.out, out);
      if (c.format == "csv") {
        sink.stream() << "u,v,weight,multiplicity\n";
        auto old = sink.stream().precision(17);
        for (const Edge& e : graph.edges()) {
          sink.stream() << e.u << ',' << e.v << ',' << e.weight << ',' << e.multiplicity << '\n';
        }
        sink.stream().precision(old);
      } else {
        write_edge_list(graph, sink.stream());
      }
    };
  });

  // cut-error
  std::string h_path, g_path, reference = "balanced", method = "auto", first_step = "weight";
  std::optional<double> clique_weight, profile_degree;
  std::vector<std::size_t> sizes;
  auto* cut = app.add_subcommand("cut-error", "Cut sparsification error of H against G");
  add_common(cut, c, true);
  cut->add_option("--h", h_path, "Edge list of H")->required();
  cut->add_option("--g", g_path, "Edge list of G");
  cut->add_option("--clique", clique_weight, "Use the clique with this edge weight as G");
  cut->add_option("--sizes", sizes, "Subset sizes to sample")->delimiter(',');
  cut->add_option("--profile-degree", profile_degree, "Also report the cut profile of H");
  cut->add_option("--reference", reference)->check(CLI::IsMember({"balanced", "expectation"}))->capture_default_str();
  cut->callback([&] {
    action = [&] {
      const WeightedGraph h = read_edge_list(std::filesystem::path(h_path));
      const WeightedGraph gg = load_reference(g_path, clique_weight, h.vertex_count());
      const CutOptions options = cut_options(c, h.vertex_count());
      CutErrorReport report;
      if (options.mode == CutMode::Exhaustive) {
        report = cut_error_exhaustive(h, gg);
      } else {
        report = cut_error_sampled(h, gg, {options.samples_per_size, sizes, c.seed});
      }
      std::optional<CutProfile> profile;
      if (profile_degree) {
        CutProfileOptions po;
        po.reference = reference == "balanced" ? CutReference::Balanced : CutReference::Expectation;
        po.force_sampled = options.mode == CutMode::Sampled;
        po.samples_per_size = options.samples_per_size;
        po.seed = c.seed;
        profile = cut_profile(h, *profile_degree, po);
      }
      if (c.format == "csv") {
        if (!profile) throw InvalidArgument("--format csv writes the cut profile; give --profile-degree");
        Sink sink(c.out, out);
        write_cut_profile_csv(*profile, sink.stream());
        return;
      }
      Json config = {{"h", h_path}, {"g", g_path}, {"clique", clique_weight ? Json(*clique_weight) : Json(nullptr)},
                     {"mode", to_string(options.mode)}, {"samples", options.samples_per_size},
                     {"sizes", sizes}, {"seed", c.seed}};
      Json result = to_json(report);
      if (profile) result["profile"] = to_json(*profile);
      emit_json(c, out, envelope("cut-error", config, result));
    };
  });

  // spectral-error
  auto* spec = app.add_subcommand("spectral-error", "Spectral sparsification error of H against G");
  add_common(spec, c, false);
  spec->add_option("--h", h_path, "Edge list of H")->required();
  spec->add_option("--g", g_path, "Edge list of G");
  spec->add_option("--clique", clique_weight, "Use the clique with this edge weight as G");
  spec->add_option("--method", method)->check(CLI::IsMember({"auto", "whitened", "clique"}))->capture_default_str();
  spec->callback([&] {
    action = [&] {
      require_json(c, "spectral-error");
      const WeightedGraph h = read_edge_list(std::filesystem::path(h_path));
      const WeightedGraph gg = load_reference(g_path, clique_weight, h.vertex_count());
      const SpectralReport report = method == "whitened" ? spectral_error_whitened(h, gg)
                                    : method == "clique" ? spectral_error_clique(h, gg)
                                                         : spectral_error(h, gg);
      Json config = {{"h", h_path}, {"g", g_path}, {"clique", clique_weight ? Json(*clique_weight) : Json(nullptr)},
                     {"method", method}};
      emit_json(c, out, envelope("spectral-error", config, to_json(report)));
    };
  });

  // certify
  double nominal = 0.0;
  bool roots = false;
  auto* cert = app.add_subcommand("certify", "Non-backtracking walk lower bound on spectral error");
  add_common(cert, c, false);
  cert->add_option("--h", h_path, "Edge list of H")->required();
  cert->add_option("--horizon", g, "Walk length g")->capture_default_str();
  cert->add_option("--d", nominal, "Nominal average degree")->required();
  cert->add_option("--first-step", first_step)->check(CLI::IsMember({"weight", "uniform"}))->capture_default_str();
  cert->add_flag("--collapse", collapse, "Merge parallel edges first");
  cert->add_flag("--roots", roots, "Include per-root norms");
  cert->callback([&] {
    action = [&] {
      require_json(c, "certify");
      WeightedGraph h = read_edge_list(std::filesystem::path(h_path));
      if (collapse) h = collapse_multiedges(h);
      CertificateOptions options;
      options.first_step = first_step == "uniform" ? FirstStep::Uniform : FirstStep::WeightProportional;
      const CertificateReport report = certify_lower_bound(h, g, nominal, options);
      Json config = {{"h", h_path}, {"horizon", g}, {"d", nominal}, {"first_step", first_step},
                     {"collapse", collapse}};
      emit_json(c, out, envelope("certify", config, to_json(report, roots)));
    };
  });

  // bounds
  std::string table_action = "table", alpha_grid, nkd;
  std::vector<double> alphas;
  bool small_grid = false;
  auto* bnd = app.add_subcommand("bounds", "Closed-form bounds: table, appendix or constants");
  add_common(bnd, c, false);
  bnd->add_option("action", table_action)->check(CLI::IsMember({"table", "appendix", "constants"}))->capture_default_str();
  bnd->add_option("--alphas", alphas, "Comma-separated alpha values")->delimiter(',');
  bnd->add_option("--alpha-grid", alpha_grid, "start:stop:step");
  bnd->add_option("--nkd", nkd, "Points n,k,d;n,k,d");
  bnd->add_flag("--small-cut-grid", small_grid, "Add the built-in small-cut (n,k,d) grid");
  bnd->add_option("--d", nominal, "Degree for constants");
  bnd->callback([&] {
    action = [&] {
      if (table_action == "appendix") {
        require_json(c, "bounds appendix");
        const auto check = verify_appendix_inequalities(default_appendix_grid());
        auto part = [](const AppendixReport& r) {
          return Json{{"points", r.points}, {"violations", r.violations},
                      {"min_slack", {{"delta", r.min_slack.delta}, {"C", r.min_slack.C}, {"slack", r.min_slack.slack}}}};
        };
        emit_json(c, out, envelope("bounds", {{"action", "appendix"}}, {{"A1", part(check.a1)}, {"A2", part(check.a2)}}));
        return;
      }
      if (table_action == "constants") {
        require_json(c, "bounds constants");
        Json result = {{"main_constant", main_constant()}};
        if (nominal > 0.0) {
          const auto r = ramanujan_epsilon(nominal);
          result["d"] = nominal;
          result["rs_over_sqrt_d"] = main_constant() / std::sqrt(nominal);
          result["ramanujan_asymptotic"] = r.asymptotic;
          result["ramanujan_exact"] = r.exact;
        }
        emit_json(c, out, envelope("bounds", {{"action", "constants"}, {"d", nominal}}, result));
        return;
      }
      BoundsGrid grid;
      grid.alphas = alphas;
      if (!alpha_grid.empty()) {
        const auto extra = parse_alpha_grid(alpha_grid);
        grid.alphas.insert(grid.alphas.end(), extra.begin(), extra.end());
      }
      grid.nkd = parse_nkd(nkd);
      if (small_grid) {
        const auto extra = small_cut_grid();
        grid.nkd.insert(grid.nkd.end(), extra.begin(), extra.end());
      }
      const BoundsTable table = run_bounds_table(grid);
      if (c.format == "csv") {
        Sink sink(c.out, out);
        write_bounds_csv(table, sink.stream());
      } else {
        Json config = {{"action", "table"}, {"alphas", grid.alphas}, {"nkd", nkd}, {"small_cut_grid", small_grid}};
        emit_json(c, out, envelope("bounds", config, to_json(table)));
      }
    };
  });

  // martingale
  std::optional<double> delta;
  std::string trace_csv;
  auto* mart = app.add_subcommand("martingale", "Simulate the edge-vertex reveal martingale");
  add_common(mart, c, false);
  mart->add_option("--n", n)->required();
  mart->add_option("--k", k)->required();
  mart->add_option("--d", d)->required();
  mart->add_option("--trials", trials, "Independent traces")->capture_default_str();
  mart->add_option("--delta", delta, "Also estimate the tail at this relative deviation");
  mart->add_option("--trace-csv", trace_csv, "Write the first trace as CSV");
  mart->callback([&] {
    action = [&] {
      require_json(c, "martingale");
      if (trials == 0) throw InvalidArgument("--trials must be positive");
      LemmaCheck total;
      RevealTrace first;
      double max_quad = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        RevealTrace trace = simulate_reveal(n, k, d, derive_seed(c.seed, t));
        total += check_lemmas(trace);
        max_quad = std::max(max_quad, trace.quad_char());
        if (t == 0) first = std::move(trace);
      }
      if (!trace_csv.empty()) {
        std::ofstream file(trace_csv);
        if (!file) throw InvalidArgument("cannot write " + trace_csv);
        write_trace_csv(first, file);
      }
      Json result = {{"x0", first.x0},
                     {"first_trace", {{"terminal", first.terminal()}, {"quad_char", first.quad_char()},
                                      {"steps", first.steps.size()}}},
                     {"max_quad_char", max_quad},
                     {"lemmas", to_json(total)}};
      if (delta) result["tail"] = to_json(empirical_tail(n, k, d, *delta, trials, c.seed));
      Json config = {{"n", n}, {"k", k}, {"d", d}, {"trials", trials}, {"seed", c.seed},
                     {"delta", delta ? Json(*delta) : Json(nullptr)}};
      emit_json(c, out, envelope("martingale", config, result));
    };
  });

  // concentration
  auto* conc = app.add_subcommand("concentration", "Spread of extremal cuts across seeds");
  add_common(conc, c, true);
  conc->add_option("--n", n)->required();
  conc->add_option("--d", d)->required();
  conc->add_option("--alphas", alphas, "Comma-separated densities in (0, 1/2]")->delimiter(',')->required();
  conc->add_option("--seeds", seeds, "Number of seeds")->capture_default_str();
  conc->callback([&] {
    action = [&] {
      require_json(c, "concentration");
      const CutOptions options = cut_options(c, n);
      const auto report = run_concentration(n, alphas, d, trial_seeds(c.seed, seeds), options);
      Json config = {{"n", n}, {"d", d}, {"alphas", alphas}, {"seeds", seeds}, {"seed", c.seed},
                     {"mode", to_string(options.mode)}, {"samples", options.samples_per_size}};
      emit_json(c, out, envelope("concentration", config, to_json(report)));
    };
  });

  // clique-sparsify
  auto* cs = app.add_subcommand("clique-sparsify", "Random regular graphs as clique sparsifiers");
  add_common(cs, c, true);
  cs->add_option("--n", n)->required();
  cs->add_option("--d", d)->required();
  cs->add_option("--seeds", seeds, "Number of seeds")->capture_default_str();
  cs->callback([&] {
    action = [&] {
      const CutOptions options = cut_options(c, n);
      const auto report = run_clique_sparsify(n, d, trial_seeds(c.seed, seeds), options);
      if (c.format == "csv") {
        Sink sink(c.out, out);
        auto& s = sink.stream();
        s << "seed,eps_cut,eps_cut_lower_bound,eps_spec,balanced_deviation\n";
        s.precision(17);
        for (const auto& r : report.records) {
          s << r.seed << ',' << r.eps_cut << ',' << r.eps_cut_lower_bound << ',' << r.eps_spec << ','
            << r.balanced_deviation << '\n';
        }
        return;
      }
      Json config = {{"n", n}, {"d", d}, {"seeds", seeds}, {"seed", c.seed},
                     {"mode", to_string(options.mode)}, {"samples", options.samples_per_size}};
      emit_json(c, out, envelope("clique-sparsify", config, to_json(report)));
    };
  });

  // separation
  std::string target = "parent";
  auto* sep = app.add_subcommand("separation", "Prefix subgraphs of a random regular parent");
  add_common(sep, c, true);
  sep->add_option("--n", n)->required();
  sep->add_option("--Delta", Delta, "Parent degree")->capture_default_str();
  sep->add_option("--d", d)->required();
  sep->add_option("--horizon", g, "Certificate walk length")->capture_default_str();
  sep->add_option("--seeds", seeds, "Number of seeds")->capture_default_str();
  sep->add_option("--target", target)->check(CLI::IsMember({"parent", "clique"}))->capture_default_str();
  sep->callback([&] {
    action = [&] {
      const CutOptions options = cut_options(c, n);
      const auto tgt = target == "clique" ? SeparationTarget::Clique : SeparationTarget::Parent;
      const auto report = run_separation(n, Delta, d, trial_seeds(c.seed, seeds), g, tgt, options);
      if (c.format == "csv") {
        Sink sink(c.out, out);
        auto& s = sink.stream();
        s << "seed,eps_cut,eps_cut_lower_bound,eps_spec,eps_spec_clique,epsilon_lb\n";
        s.precision(17);
        for (const auto& r : report.records) {
          s << r.seed << ',' << r.eps_cut << ',' << r.eps_cut_lower_bound << ',' << r.eps_spec << ','
            << r.eps_spec_clique << ',';
          if (r.epsilon_lb) s << *r.epsilon_lb;
          s << '\n';
        }
        return;
      }
      Json config = {{"n", n}, {"Delta", Delta}, {"d", d}, {"horizon", g}, {"seeds", seeds},
                     {"seed", c.seed}, {"target", target}, {"mode", to_string(options.mode)},
                     {"samples", options.samples_per_size}};
      emit_json(c, out, envelope("separation", config, to_json(report)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgument;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const SizeLimit& e) {
    err << "size limit: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInvalidArgument;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sparsify
