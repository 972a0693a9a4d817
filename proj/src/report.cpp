#include "sparsify/report.hpp"

namespace sparsify {

namespace {

Json vertices(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v);
  return out;
}

template <class T>
Json optional_value(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

}  // namespace

Json to_json(const CutErrorReport& report) {
  return {{"epsilon", report.epsilon},
          {"witness", vertices(report.witness)},
          {"mode", to_string(report.mode)},
          {"lower_bound", report.lower_bound},
          {"subsets_examined", report.subsets_examined}};
}

Json to_json(const CutProfile& profile) {
  Json rows = Json::array();
  for (const auto& row : profile.rows) {
    Json r = {{"k", row.k},
              {"alpha", row.alpha},
              {"max_dev", row.max_deviation},
              {"min_dev", row.min_deviation},
              {"samples", row.subsets_examined}};
    if (row.argmax) r["argmax"] = vertices(*row.argmax);
    rows.push_back(std::move(r));
  }
  return {{"mode", to_string(profile.mode)},
          {"reference", profile.reference == CutReference::Balanced ? "balanced" : "expectation"},
          {"degree", profile.degree},
          {"max_abs_deviation", profile.max_abs_deviation()},
          {"rows", std::move(rows)}};
}

Json to_json(const SpectralReport& report) {
  return {{"epsilon", report.epsilon},
          {"lambda_min", report.lambda_min},
          {"lambda_max", report.lambda_max},
          {"kernel_ok", report.kernel_ok},
          {"n", report.n},
          {"method", report.method}};
}

Json to_json(const PseudoGirthReport& report) {
  return {{"g", report.g},
          {"v_prime", report.v_prime},
          {"v_double_prime", report.v_double_prime},
          {"F", report.F},
          {"B", report.B},
          {"violators", vertices(report.violators)}};
}

Json to_json(const CertificateReport& report, bool include_roots) {
  const auto& a = report.assumptions;
  Json out = {
      {"n", report.n},
      {"g", report.g},
      {"d", report.d},
      {"first_step", to_string(report.first_step)},
      {"products",
       {{"X.L_H", report.x_lh},
        {"X.L_Kbar", report.x_lk},
        {"Y.L_H", report.y_lh},
        {"Y.L_Kbar", report.y_lk},
        {"Y.D_H", report.y_dh},
        {"(Y-X).A_H", report.y_minus_x_ah},
        {"I.X", report.i_x},
        {"I.Y", report.i_y},
        {"X.J", report.x_j},
        {"Y.J", report.y_j}}},
      {"R", report.ratio},
      {"epsilon_lb", report.epsilon_lb},
      {"B", report.girth.B},
      {"F", report.girth.F},
      {"pseudo_girth", to_json(report.girth)},
      {"total_deficiency", report.total_deficiency},
      {"assumptions",
       {{"min_combinatorial_degree", a.min_combinatorial_degree},
        {"min_weighted_degree", a.min_weighted_degree},
        {"max_weighted_degree", a.max_weighted_degree},
        {"max_edge_weight", a.max_edge_weight},
        {"combinatorial_degree_ok", a.combinatorial_degree_ok},
        {"weighted_degree_ok", a.weighted_degree_ok},
        {"edge_weight_ok", a.edge_weight_ok}}}};
  if (include_roots) {
    Json roots = Json::array();
    for (const auto& r : report.roots) {
      roots.push_back({{"f_norm2", r.f_norm2}, {"h_norm2", r.h_norm2}, {"walk_mass", r.walk_mass}});
    }
    out["roots"] = std::move(roots);
  }
  return out;
}

Json to_json(const RSBound& b) {
  return {{"alpha", b.alpha},
          {"T", b.T},
          {"M", b.M},
          {"lambda_hat", b.lambda_hat},
          {"ground_state_bound", b.ground_state_bound},
          {"relative_error_bound", b.relative_error_bound}};
}

Json to_json(const TailBound& b) {
  return {{"n", b.n},
          {"k", b.k},
          {"d", b.d},
          {"delta", b.delta},
          {"C", b.C},
          {"expected_interior", b.expected_interior},
          {"regime", to_string(b.regime)},
          {"exponent", b.exponent},
          {"value", b.value},
          {"log_value", b.log_value}};
}

Json to_json(const LemmaCheck& c) {
  return {{"steps", c.steps},
          {"ratio_violations", c.ratio_violations},
          {"range_violations", c.range_violations},
          {"magnitude_violations", c.magnitude_violations},
          {"quad_char_violations", c.quad_char_violations},
          {"terminal_violations", c.terminal_violations},
          {"quad_char_bound", c.quad_char_bound}};
}

Json to_json(const EmpiricalTail& t) {
  return {{"trials", t.trials},
          {"exceedances", t.exceedances},
          {"empirical_prob", t.empirical_prob},
          {"sample_mean", t.sample_mean},
          {"sample_variance", t.sample_variance},
          {"bound", to_json(t.bound)},
          {"p_value", t.p_value},
          {"consistent", t.consistent}};
}

Json to_json(const DegreeReport& r) {
  auto stats = [](const DegreeStats& s) {
    return Json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
  };
  return {{"weighted", stats(r.weighted_stats)}, {"combinatorial", stats(r.combinatorial_stats)}};
}

namespace {

Json to_json(const ReferenceConstants& refs) {
  return {{"rs_over_sqrt_d", refs.rs_over_sqrt_d},
          {"ramanujan_asymptotic", refs.ramanujan_asymptotic},
          {"ramanujan_exact", refs.ramanujan_exact},
          {"note", "asymptotic, error terms unquantified"}};
}

}  // namespace

Json to_json(const CliqueSparsifyReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) {
    records.push_back({{"seed", r.seed},
                       {"eps_cut", r.eps_cut},
                       {"eps_cut_lower_bound", r.eps_cut_lower_bound},
                       {"witness", vertices(r.witness)},
                       {"eps_spec", r.eps_spec},
                       {"balanced_deviation", r.balanced_deviation},
                       {"profile", to_json(r.profile)}});
  }
  return {{"n", report.n},
          {"d", report.d},
          {"cut_mode", to_string(report.mode)},
          {"median_eps_cut", report.median_eps_cut},
          {"median_eps_spec", report.median_eps_spec},
          {"median_balanced_deviation", report.median_balanced_deviation},
          {"references", to_json(report.references)},
          {"records", std::move(records)}};
}

Json to_json(const SeparationReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec = {{"seed", r.seed},
                {"eps_cut", r.eps_cut},
                {"eps_cut_lower_bound", r.eps_cut_lower_bound},
                {"eps_spec", r.eps_spec},
                {"eps_spec_clique", r.eps_spec_clique},
                {"epsilon_lb", optional_value(r.epsilon_lb)},
                {"ratio", optional_value(r.ratio)}};
    if (!r.certificate_note.empty()) rec["certificate_note"] = r.certificate_note;
    records.push_back(std::move(rec));
  }
  return {{"n", report.n},
          {"Delta", report.Delta},
          {"d", report.d},
          {"g", report.g},
          {"target", to_string(report.target)},
          {"cut_mode", to_string(report.mode)},
          {"references", to_json(report.references)},
          {"records", std::move(records)}};
}

Json to_json(const BoundsTable& table) {
  Json alphas = Json::array();
  for (const auto& b : table.alpha_rows) alphas.push_back(to_json(b));
  Json nkd = Json::array();
  for (const auto& r : table.nkd_rows) {
    nkd.push_back({{"n", r.point.n},
                   {"k", r.point.k},
                   {"d", r.point.d},
                   {"generic", to_json(r.generic)},
                   {"regime", to_json(r.regime)},
                   {"log_budget", r.log_budget},
                   {"ramanujan_asymptotic", r.ramanujan.asymptotic},
                   {"ramanujan_exact", r.ramanujan.exact}});
  }
  return {{"main_constant", main_constant()}, {"alpha", std::move(alphas)}, {"nkd", std::move(nkd)}};
}

Json to_json(const ConcentrationReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json checks = Json::array();
    for (const auto& c : row.checks) {
      checks.push_back({{"epsilon", c.epsilon},
                        {"envelope", c.envelope},
                        {"max_exceedances", c.max_exceedances},
                        {"min_exceedances", c.min_exceedances},
                        {"max_p_value", c.max_p_value},
                        {"min_p_value", c.min_p_value},
                        {"consistent", c.consistent}});
    }
    rows.push_back({{"alpha", row.alpha},
                    {"k", row.k},
                    {"max_cut_over_n", row.max_cut},
                    {"min_cut_over_n", row.min_cut},
                    {"mean_max", row.mean_max},
                    {"mean_min", row.mean_min},
                    {"sd_max", row.sd_max},
                    {"sd_min", row.sd_min},
                    {"checks", std::move(checks)}});
  }
  return {{"n", report.n},
          {"d", report.d},
          {"cut_mode", to_string(report.mode)},
          {"consistent", report.consistent},
          {"rows", std::move(rows)}};
}

}  // namespace sparsify
