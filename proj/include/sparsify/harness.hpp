#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsify/bounds.hpp"
#include "sparsify/cuts.hpp"
#include "sparsify/graph.hpp"

namespace sparsify {

// How cut errors are measured inside experiments.
struct CutOptions {
  CutMode mode = CutMode::Exhaustive;
  std::size_t samples_per_size = 1000;
};

// Seeds for `count` trials: derive_seed(master, 0..count-1).
std::vector<std::uint64_t> trial_seeds(std::uint64_t master, std::size_t count);

struct CliqueSparsifyRecord {
  std::uint64_t seed = 0;
  double eps_cut = 0.0;
  bool eps_cut_lower_bound = false;
  std::vector<Vertex> witness;
  double eps_spec = 0.0;
  // max |deviation| of the unscaled graph's profile at k = n/2.
  double balanced_deviation = 0.0;
  CutProfile profile;
};

struct ReferenceConstants {
  double rs_over_sqrt_d = 0.0;  // 2 sqrt(2/pi) / sqrt(d)
  double ramanujan_asymptotic = 0.0;
  double ramanujan_exact = 0.0;
};

ReferenceConstants reference_constants(double d);

struct CliqueSparsifyReport {
  std::size_t n = 0;
  std::size_t d = 0;
  CutMode mode = CutMode::Exhaustive;
  std::vector<CliqueSparsifyRecord> records;
  double median_eps_cut = 0.0;
  double median_eps_spec = 0.0;
  double median_balanced_deviation = 0.0;
  ReferenceConstants references;
};

// H = G_Reg(n, d) scaled by (n-1)/d against the unit clique K_n.
CliqueSparsifyReport run_clique_sparsify(std::size_t n, std::size_t d,
                                         const std::vector<std::uint64_t>& seeds,
                                         const CutOptions& cuts = {});

enum class SeparationTarget { Clique, Parent };
const char* to_string(SeparationTarget target);

struct SeparationRecord {
  std::uint64_t seed = 0;
  double eps_cut = 0.0;
  bool eps_cut_lower_bound = false;
  double eps_spec = 0.0;         // against the chosen target
  double eps_spec_clique = 0.0;  // against K_n, the certificate's reference
  std::optional<double> epsilon_lb;
  std::optional<double> ratio;
  std::string certificate_note;  // why the certificate is absent, if it is
};

struct SeparationReport {
  std::size_t n = 0, Delta = 0, d = 0, g = 0;
  SeparationTarget target = SeparationTarget::Parent;
  CutMode mode = CutMode::Exhaustive;
  std::vector<SeparationRecord> records;
  ReferenceConstants references;
};

// G = G_Reg(n, Delta); H = its first d matchings, scaled by Delta/d (parent
// target) or (n-1)/d (clique target).
SeparationReport run_separation(std::size_t n, std::size_t Delta, std::size_t d,
                                const std::vector<std::uint64_t>& seeds, std::size_t g,
                                SeparationTarget target, const CutOptions& cuts = {});

struct NkdPoint {
  std::uint64_t n = 0, k = 0, d = 0;
};

struct BoundsGrid {
  std::vector<double> alphas;
  std::vector<NkdPoint> nkd;
};

struct BoundsNkdRow {
  NkdPoint point;
  TailBound generic;
  TailBound regime;
  double log_budget = 0.0;  // ln(2 C(n,k)^-1.01)
  RamanujanEpsilon ramanujan;
};

struct BoundsTable {
  std::vector<RSBound> alpha_rows;
  std::vector<BoundsNkdRow> nkd_rows;
};

// nkd points must lie in 2 <= k <= n/100 with d >= 2; delta = small_cut_delta.
BoundsTable run_bounds_table(const BoundsGrid& grid);
void write_bounds_csv(const BoundsTable& table, std::ostream& out);

// Points (n, k, d) with n in {1e3, ..., 1e7}, five k log-spaced in [2, n/100]
// and d in {16, 64, 256, 1024}.
std::vector<NkdPoint> small_cut_grid();

struct EnvelopeCheck {
  double epsilon = 0.0;
  double envelope = 0.0;  // min(1, 2 exp(-n eps^2 / d))
  std::uint64_t max_exceedances = 0;
  std::uint64_t min_exceedances = 0;
  double max_p_value = 1.0;
  double min_p_value = 1.0;
  bool consistent = true;
};

struct ConcentrationRow {
  double alpha = 0.0;
  std::size_t k = 0;
  std::vector<double> max_cut;  // max over |S| = k of cut/n, per seed
  std::vector<double> min_cut;
  double mean_max = 0.0, mean_min = 0.0;
  double sd_max = 0.0, sd_min = 0.0;
  std::vector<EnvelopeCheck> checks;
};

struct ConcentrationReport {
  std::size_t n = 0, d = 0;
  CutMode mode = CutMode::Exhaustive;
  std::vector<ConcentrationRow> rows;
  bool consistent = true;
};

// The expectation of the extremal cut is estimated by the seed mean.
ConcentrationReport run_concentration(std::size_t n, const std::vector<double>& alphas,
                                      std::size_t d, const std::vector<std::uint64_t>& seeds,
                                      const CutOptions& cuts = {});

}  // namespace sparsify
