#include "sparsify/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "sparsify/error.hpp"
#include "sparsify/nbwalk.hpp"
#include "sparsify/rng.hpp"
#include "sparsify/spectral.hpp"
#include "sparsify/stats.hpp"

namespace sparsify {

std::vector<std::uint64_t> trial_seeds(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_seed(master, i);
  return seeds;
}

ReferenceConstants reference_constants(double d) {
  ReferenceConstants refs;
  refs.rs_over_sqrt_d = main_constant() / std::sqrt(d);
  refs.ramanujan_asymptotic = 2.0 / std::sqrt(d);
  if (d >= 2.0) refs.ramanujan_exact = ramanujan_epsilon(d).exact;
  return refs;
}

const char* to_string(SeparationTarget target) {
  return target == SeparationTarget::Clique ? "clique" : "parent";
}

namespace {

// Every size up to 8, then about a dozen log-spaced sizes up to n/2.
std::vector<std::size_t> default_sample_sizes(std::size_t n, std::size_t from) {
  const std::size_t half = n / 2;
  std::vector<std::size_t> sizes;
  for (std::size_t k = from; k <= std::min<std::size_t>(half, 8); ++k) sizes.push_back(k);
  if (half > 8) {
    const double lo = std::log(8.0), hi = std::log(static_cast<double>(half));
    for (int i = 1; i <= 12; ++i) {
      sizes.push_back(static_cast<std::size_t>(std::llround(std::exp(lo + (hi - lo) * i / 12.0))));
    }
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

CutErrorReport measure_cut(const WeightedGraph& h, const WeightedGraph& g, const CutOptions& cuts,
                           std::uint64_t seed) {
  if (cuts.mode == CutMode::Exhaustive) return cut_error_exhaustive(h, g);
  CutSampling sampling;
  sampling.samples_per_size = cuts.samples_per_size;
  sampling.sizes = default_sample_sizes(h.vertex_count(), 3);
  sampling.seed = derive_seed(seed, 1);
  return cut_error_sampled(h, g, sampling);
}

CutProfileOptions profile_options(const CutOptions& cuts, std::size_t n, std::uint64_t seed) {
  CutProfileOptions options;
  options.force_sampled = cuts.mode == CutMode::Sampled;
  options.samples_per_size = cuts.samples_per_size;
  options.seed = derive_seed(seed, 2);
  if (options.force_sampled) options.sizes = default_sample_sizes(n, 1);
  return options;
}

double abs_deviation(const CutProfileRow& row) {
  return std::max(std::abs(row.max_deviation), std::abs(row.min_deviation));
}

}  // namespace

CliqueSparsifyReport run_clique_sparsify(std::size_t n, std::size_t d,
                                         const std::vector<std::uint64_t>& seeds,
                                         const CutOptions& cuts) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (d == 0) throw InvalidArgument("degree must be positive");
  CliqueSparsifyReport report;
  report.n = n;
  report.d = d;
  report.mode = cuts.mode;
  report.references = reference_constants(static_cast<double>(d));
  const WeightedGraph clique = make_clique(n, 1.0);
  const double scale = static_cast<double>(n - 1) / static_cast<double>(d);
  std::vector<double> cut_values, spec_values, balanced_values;
  for (std::uint64_t seed : seeds) {
    const WeightedGraph base = sample_regular_multigraph(n, d, seed);
    const WeightedGraph h = scale_weights(base, scale);
    CliqueSparsifyRecord record;
    record.seed = seed;
    const CutErrorReport cut = measure_cut(h, clique, cuts, seed);
    record.eps_cut = cut.epsilon;
    record.eps_cut_lower_bound = cut.lower_bound;
    record.witness = cut.witness;
    record.eps_spec = spectral_error(h, clique).epsilon;
    record.profile = cut_profile(base, static_cast<double>(d), profile_options(cuts, n, seed));
    record.balanced_deviation = abs_deviation(record.profile.rows.back());
    cut_values.push_back(record.eps_cut);
    spec_values.push_back(record.eps_spec);
    balanced_values.push_back(record.balanced_deviation);
    report.records.push_back(std::move(record));
  }
  report.median_eps_cut = median(cut_values);
  report.median_eps_spec = median(spec_values);
  report.median_balanced_deviation = median(balanced_values);
  return report;
}

SeparationReport run_separation(std::size_t n, std::size_t Delta, std::size_t d,
                                const std::vector<std::uint64_t>& seeds, std::size_t g,
                                SeparationTarget target, const CutOptions& cuts) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (d == 0 || d > Delta) throw InvalidArgument("separation needs 1 <= d <= Delta");
  if (n > kDenseEigenLimit) {
    throw SizeLimit("separation measures spectral error densely; n must be <= " +
                    std::to_string(kDenseEigenLimit));
  }
  SeparationReport report;
  report.n = n;
  report.Delta = Delta;
  report.d = d;
  report.g = g;
  report.target = target;
  report.mode = cuts.mode;
  report.references = reference_constants(static_cast<double>(d));
  const WeightedGraph clique = make_clique(n, 1.0);
  const double dd = static_cast<double>(d);
  for (std::uint64_t seed : seeds) {
    const WeightedGraph parent = sample_regular_multigraph(n, Delta, seed);
    const WeightedGraph prefix = first_matchings_subgraph(parent, d);
    SeparationRecord record;
    record.seed = seed;

    const WeightedGraph to_clique = scale_weights(prefix, static_cast<double>(n - 1) / dd);
    record.eps_spec_clique = spectral_error(to_clique, clique).epsilon;
    if (target == SeparationTarget::Clique) {
      const CutErrorReport cut = measure_cut(to_clique, clique, cuts, seed);
      record.eps_cut = cut.epsilon;
      record.eps_cut_lower_bound = cut.lower_bound;
      record.eps_spec = record.eps_spec_clique;
    } else {
      const WeightedGraph h = scale_weights(prefix, static_cast<double>(Delta) / dd);
      const CutErrorReport cut = measure_cut(h, parent, cuts, seed);
      record.eps_cut = cut.epsilon;
      record.eps_cut_lower_bound = cut.lower_bound;
      record.eps_spec = spectral_error(h, parent).epsilon;
    }

    // Certificate on the unit-weighted-degree version; its ratio is scale free.
    const WeightedGraph unit = collapse_multiedges(scale_weights(prefix, 1.0 / dd));
    if (n < 3) {
      record.certificate_note = "n < 3";
    } else if (!unit.is_connected()) {
      record.certificate_note = "prefix graph is disconnected";
    } else {
      try {
        const CertificateReport cert = certify_lower_bound(unit, g, dd);
        record.epsilon_lb = cert.epsilon_lb;
        record.ratio = cert.ratio;
      } catch (const DegenerateInput& e) {
        record.certificate_note = e.what();
      }
    }
    report.records.push_back(std::move(record));
  }
  return report;
}

BoundsTable run_bounds_table(const BoundsGrid& grid) {
  BoundsTable table;
  for (double alpha : grid.alphas) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw InvalidArgument("alpha grid values must lie in (0, 1)");
    }
    table.alpha_rows.push_back(rs_bound(alpha));
  }
  for (const NkdPoint& p : grid.nkd) {
    if (p.k < 2 || 100 * p.k > p.n || p.d < 2) {
      throw InvalidArgument("(n,k,d) points need 2 <= k <= n/100 and d >= 2 (got n=" +
                            std::to_string(p.n) + ", k=" + std::to_string(p.k) +
                            ", d=" + std::to_string(p.d) + ")");
    }
    BoundsNkdRow row;
    row.point = p;
    const double d = static_cast<double>(p.d);
    const double delta = small_cut_delta(p.n, p.k, d);
    row.generic = tail_bound_generic(p.n, p.k, d, delta);
    row.regime = tail_bound_regime(p.n, p.k, d, delta);
    row.log_budget = log_small_cut_budget(p.n, p.k);
    row.ramanujan = ramanujan_epsilon(d);
    table.nkd_rows.push_back(row);
  }
  return table;
}

void write_bounds_csv(const BoundsTable& table, std::ostream& out) {
  out << "kind,alpha,T,M,lambda_hat,ground_state_bound,relative_error_bound,"
         "n,k,d,delta,C,expected_interior,generic_log,generic,regime,regime_log,regime_value,"
         "log_budget,ramanujan_asymptotic,ramanujan_exact\n";
  const auto precision = out.precision(17);
  for (const RSBound& b : table.alpha_rows) {
    out << "alpha," << b.alpha << ',' << b.T << ',' << b.M << ',' << b.lambda_hat << ','
        << b.ground_state_bound << ',' << b.relative_error_bound << ",,,,,,,,,,,,,,\n";
  }
  for (const BoundsNkdRow& r : table.nkd_rows) {
    out << "nkd,,,,,,," << r.point.n << ',' << r.point.k << ',' << r.point.d << ','
        << r.generic.delta << ',' << r.generic.C << ',' << r.generic.expected_interior << ','
        << r.generic.log_value << ',' << r.generic.value << ',' << to_string(r.regime.regime)
        << ',' << r.regime.log_value << ',' << r.regime.value << ',' << r.log_budget << ','
        << r.ramanujan.asymptotic << ',' << r.ramanujan.exact << '\n';
  }
  out.precision(precision);
}

std::vector<NkdPoint> small_cut_grid() {
  std::vector<NkdPoint> grid;
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL, 1000000ULL, 10000000ULL}) {
    const double hi = std::log(static_cast<double>(n / 100));
    const double lo = std::log(2.0);
    std::vector<std::uint64_t> ks;
    for (int i = 0; i < 5; ++i) {
      ks.push_back(static_cast<std::uint64_t>(std::llround(std::exp(lo + (hi - lo) * i / 4.0))));
    }
    for (std::uint64_t k : ks) {
      for (std::uint64_t d : {16ULL, 64ULL, 256ULL, 1024ULL}) grid.push_back({n, k, d});
    }
  }
  return grid;
}

ConcentrationReport run_concentration(std::size_t n, const std::vector<double>& alphas,
                                      std::size_t d, const std::vector<std::uint64_t>& seeds,
                                      const CutOptions& cuts) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (alphas.empty()) throw InvalidArgument("at least one alpha is required");
  if (d == 0) throw InvalidArgument("degree must be positive");
  ConcentrationReport report;
  report.n = n;
  report.d = d;
  report.mode = cuts.mode;
  const double nn = static_cast<double>(n), dd = static_cast<double>(d);
  std::vector<std::size_t> ks;
  for (double alpha : alphas) {
    if (!(alpha > 0.0 && alpha <= 0.5)) throw InvalidArgument("alpha must lie in (0, 1/2]");
    const double size = alpha * nn;
    if (size < 1.0) throw InvalidArgument("alpha * n must be at least 1");
    ks.push_back(static_cast<std::size_t>(std::llround(size)));
    ConcentrationRow row;
    row.alpha = alpha;
    row.k = ks.back();
    report.rows.push_back(row);
  }

  for (std::uint64_t seed : seeds) {
    const WeightedGraph h = sample_regular_multigraph(n, d, seed);
    CutProfileOptions options;
    options.force_sampled = cuts.mode == CutMode::Sampled;
    options.samples_per_size = cuts.samples_per_size;
    options.sizes = ks;
    options.seed = derive_seed(seed, 3);
    const CutProfile profile = cut_profile(h, dd, options);
    for (ConcentrationRow& row : report.rows) {
      const CutProfileRow& pr = profile.row(row.k);
      const double kk = static_cast<double>(row.k);
      const double reference = dd * kk * (nn - kk) / nn;
      row.max_cut.push_back(reference * (1.0 + pr.max_deviation) / nn);
      row.min_cut.push_back(reference * (1.0 + pr.min_deviation) / nn);
    }
  }

  const std::size_t trials = seeds.size();
  for (ConcentrationRow& row : report.rows) {
    row.mean_max = mean(row.max_cut);
    row.mean_min = mean(row.min_cut);
    row.sd_max = std::sqrt(sample_variance(row.max_cut));
    row.sd_min = std::sqrt(sample_variance(row.min_cut));
    for (double t : {0.5, 1.0, 1.5, 2.0}) {
      EnvelopeCheck check;
      check.epsilon = t * std::sqrt(dd / nn);
      check.envelope = std::min(1.0, 2.0 * std::exp(-nn * check.epsilon * check.epsilon / dd));
      for (std::size_t s = 0; s < trials; ++s) {
        check.max_exceedances += std::abs(row.max_cut[s] - row.mean_max) > check.epsilon;
        check.min_exceedances += std::abs(row.min_cut[s] - row.mean_min) > check.epsilon;
      }
      check.max_p_value = binomial_upper_tail(trials, check.max_exceedances, check.envelope);
      check.min_p_value = binomial_upper_tail(trials, check.min_exceedances, check.envelope);
      check.consistent = check.max_p_value >= 0.01 && check.min_p_value >= 0.01;
      report.consistent = report.consistent && check.consistent;
      row.checks.push_back(check);
    }
  }
  return report;
}

}  // namespace sparsify
