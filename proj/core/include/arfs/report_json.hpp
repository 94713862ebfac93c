#pragma once

#include <nlohmann/json.hpp>

#include "arfs/decompose.hpp"
#include "arfs/forest.hpp"
#include "arfs/synth.hpp"

namespace arfs {

/// {"strong", "weak", "irrelevant", "diagnostics"} with zero-based indices.
/// Key order is fixed so equal reports serialize to identical bytes.
nlohmann::ordered_json report_to_json(const RelevanceReport& report);

/// {"strong", "weak", "irrelevant"}
nlohmann::ordered_json truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const nlohmann::json& doc);

/// Debug dump: parameters plus one set of parallel node arrays per tree.
nlohmann::ordered_json forest_to_json(const Forest& forest);

} // namespace arfs
