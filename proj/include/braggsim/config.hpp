#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "braggsim/spectra.hpp"

namespace braggsim {

/// A validated run configuration. `parameters` is the fully resolved
/// physical-unit parameter block (defaults, then preset values, then user
/// overrides); `defaults_applied` records every field that was filled from a
/// built-in default so the provenance ends up in the result metadata.
struct RunConfig {
    std::string preset; // empty when the document gave explicit parameters only
    nlohmann::json parameters;
    std::vector<std::string> defaults_applied;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_path = "spectra";
    std::string format = "csv";
};

/// Parse and validate a configuration document. Throws ParseError on
/// malformed JSON and ValidationError carrying the complete list of
/// violations otherwise.
RunConfig load_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

/// One concrete execution unit: presets with a parameter family expand to
/// several labeled runs (one output table each).
struct NamedRun {
    std::string label; // empty for a single unlabeled run
    nlohmann::json parameters;
    SweepPlan plan;
    std::vector<double> survival_grid; // non-empty: reflectance-vs-atom-number scan
    bool loss_scan = false;
};

std::vector<NamedRun> build_runs(const RunConfig& config);

/// Convert one resolved physical-unit parameter block into an executable
/// sweep plan (Gamma0 and phase units).
SweepPlan plan_from_parameters(const nlohmann::json& parameters, std::uint64_t seed);

} // namespace braggsim
