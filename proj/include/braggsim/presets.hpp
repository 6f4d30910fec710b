#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace braggsim {

/// One member of a preset's parameter family, applied on top of the
/// resolved base parameters.
struct PresetVariant {
    std::string label;
    nlohmann::json patch;
};

/// A named scenario: a base parameter block in physical units plus an
/// optional family of labeled variants (one output table per variant).
struct Preset {
    std::string name;
    std::string description;
    nlohmann::json parameters;
    std::vector<PresetVariant> variants;
};

const std::vector<Preset>& preset_catalog();
const Preset* find_preset(const std::string& name);

} // namespace braggsim
