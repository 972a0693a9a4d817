#pragma once

#include <json.hpp>

#include "sparsify/bounds.hpp"
#include "sparsify/cuts.hpp"
#include "sparsify/graph.hpp"
#include "sparsify/harness.hpp"
#include "sparsify/martingale.hpp"
#include "sparsify/nbwalk.hpp"
#include "sparsify/spectral.hpp"

namespace sparsify {

using Json = nlohmann::ordered_json;

Json to_json(const CutErrorReport& report);
Json to_json(const CutProfile& profile);
Json to_json(const SpectralReport& report);
Json to_json(const PseudoGirthReport& report);
// Per-root summaries are omitted unless requested.
Json to_json(const CertificateReport& report, bool include_roots = false);
Json to_json(const RSBound& bound);
Json to_json(const TailBound& bound);
Json to_json(const LemmaCheck& check);
Json to_json(const EmpiricalTail& tail);
Json to_json(const DegreeReport& report);
Json to_json(const CliqueSparsifyReport& report);
Json to_json(const SeparationReport& report);
Json to_json(const BoundsTable& table);
Json to_json(const ConcentrationReport& report);

}  // namespace sparsify
