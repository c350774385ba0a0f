#pragma once

#include "darkbanner/trees/gbt.hpp"

#include <nlohmann/json.hpp>

namespace darkbanner::trees {

inline constexpr int kModelFormatVersion = 1;

// Trees are stored as nested node objects. Doubles use the library's
// shortest round-trip form, so save -> load -> predict is bit-identical.
nlohmann::json tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::json& j);

nlohmann::json gbt_to_json(const GbtModel& model);
GbtModel gbt_from_json(const nlohmann::json& j);

}  // namespace darkbanner::trees
