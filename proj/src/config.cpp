#include "braggsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "braggsim/constants.hpp"
#include "braggsim/presets.hpp"

namespace braggsim {

namespace {

using nlohmann::json;

enum class ParamKind { number, nullable_number, integer, boolean, string_value, number_array };

struct ParamSpec {
    const char* key;
    ParamKind kind;
};

// Every recognized parameter with its built-in default. All values are in
// the physical units used at the tool boundary (MHz, nm, microkelvin, kHz);
// rates are in Gamma0 units.
const ParamSpec kParamSpecs[] = {
    {"coupling", ParamKind::string_value},
    {"gamma_1d", ParamKind::number},
    {"gamma_1d_forward", ParamKind::number},
    {"gamma_1d_backward", ParamKind::number},
    {"gamma_prime", ParamKind::number},
    {"shift_mhz", ParamKind::number},
    {"n_atoms", ParamKind::integer},
    {"fill_factor", ParamKind::number},
    {"survival", ParamKind::number},
    {"n_chains", ParamKind::integer},
    {"delta_lambda_nm", ParamKind::number},
    {"trap_dispersion_factor", ParamKind::number},
    {"phase_per_site", ParamKind::nullable_number},
    {"sigma_delta_mhz", ParamKind::number},
    {"sigma_z_nm", ParamKind::number},
    {"temperature_uk", ParamKind::nullable_number},
    {"axial_frequency_khz", ParamKind::nullable_number},
    {"grid_min_mhz", ParamKind::number},
    {"grid_max_mhz", ParamKind::number},
    {"grid_step_mhz", ParamKind::number},
    {"n_realizations", ParamKind::integer},
    {"gamma0_mhz", ParamKind::number},
    {"lambda0_nm", ParamKind::number},
    {"probe_k_dispersion", ParamKind::boolean},
    {"survival_grid", ParamKind::number_array},
};

json default_parameters() {
    return json{
        {"coupling", "symmetric"},
        {"gamma_1d", 0.01},
        {"gamma_1d_forward", 0.0},
        {"gamma_1d_backward", 0.0},
        {"gamma_prime", 1.0},
        {"shift_mhz", 0.0},
        {"n_atoms", 2000},
        {"fill_factor", 1.0},
        {"survival", 1.0},
        {"n_chains", 2},
        {"delta_lambda_nm", 0.0},
        {"trap_dispersion_factor", 1.0},
        {"phase_per_site", nullptr},
        {"sigma_delta_mhz", 0.0},
        {"sigma_z_nm", 0.0},
        {"temperature_uk", nullptr},
        {"axial_frequency_khz", nullptr},
        {"grid_min_mhz", -40.0},
        {"grid_max_mhz", 60.0},
        {"grid_step_mhz", 1.0},
        {"n_realizations", 15},
        {"gamma0_mhz", constants::default_gamma0_mhz},
        {"lambda0_nm", constants::default_lambda0_nm},
        {"probe_k_dispersion", false},
        {"survival_grid", json::array()},
    };
}

const ParamSpec* find_param_spec(const std::string& key) {
    for (const auto& spec : kParamSpecs) {
        if (key == spec.key) {
            return &spec;
        }
    }
    return nullptr;
}

bool type_matches(const json& value, ParamKind kind) {
    switch (kind) {
    case ParamKind::number:
        return value.is_number();
    case ParamKind::nullable_number:
        return value.is_null() || value.is_number();
    case ParamKind::integer:
        return value.is_number_integer();
    case ParamKind::boolean:
        return value.is_boolean();
    case ParamKind::string_value:
        return value.is_string();
    case ParamKind::number_array:
        if (!value.is_array()) {
            return false;
        }
        for (const auto& v : value) {
            if (!v.is_number()) {
                return false;
            }
        }
        return true;
    }
    return false;
}

void check_parameter_block(const json& block, const char* where,
                           std::vector<std::string>& issues) {
    for (const auto& [key, value] : block.items()) {
        const ParamSpec* spec = find_param_spec(key);
        if (spec == nullptr) {
            issues.push_back(std::string(where) + ": unknown parameter '" + key + "'");
        } else if (!type_matches(value, spec->kind)) {
            issues.push_back(std::string(where) + ": parameter '" + key +
                             "' has the wrong type");
        }
    }
}

void check_ranges(const json& p, std::vector<std::string>& issues) {
    const auto num = [&](const char* key) { return p.at(key).get<double>(); };
    const auto push = [&](const std::string& msg) { issues.push_back(msg); };

    const std::string coupling = p.at("coupling").get<std::string>();
    if (coupling != "symmetric" && coupling != "chiral") {
        push("coupling must be 'symmetric' or 'chiral' (got '" + coupling + "')");
    }
    if (!(num("gamma_1d") >= 0.0)) {
        push("gamma_1d must be non-negative");
    }
    if (!(num("gamma_1d_forward") >= 0.0) || !(num("gamma_1d_backward") >= 0.0)) {
        push("chiral guided rates must be non-negative");
    }
    if (!(num("gamma_prime") >= 0.0)) {
        push("gamma_prime must be non-negative");
    }
    if (!(p.at("n_atoms").get<long>() >= 1)) {
        push("n_atoms must be at least 1");
    }
    const double f = num("fill_factor");
    if (!(f >= 0.0 && f <= 1.0)) {
        push("fill_factor must be in [0, 1] (got " + std::to_string(f) + ")");
    }
    const double eta = num("survival");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        push("survival must be in [0, 1] (got " + std::to_string(eta) + ")");
    }
    const long chains = p.at("n_chains").get<long>();
    if (chains != 1 && chains != 2) {
        push("n_chains must be 1 or 2");
    }
    if (!(num("lambda0_nm") > 0.0)) {
        push("lambda0_nm must be positive");
    }
    if (!(num("gamma0_mhz") > 0.0)) {
        push("gamma0_mhz must be positive");
    }
    if (!(num("delta_lambda_nm") > -num("lambda0_nm"))) {
        push("delta_lambda_nm would make the lattice constant non-positive");
    }
    if (!(num("trap_dispersion_factor") > 0.0)) {
        push("trap_dispersion_factor must be positive");
    }
    if (!p.at("phase_per_site").is_null() && !(p.at("phase_per_site").get<double>() > 0.0)) {
        push("phase_per_site must be positive");
    }
    if (!(num("sigma_delta_mhz") >= 0.0)) {
        push("sigma_delta_mhz must be non-negative");
    }
    if (!(num("sigma_z_nm") >= 0.0)) {
        push("sigma_z_nm must be non-negative");
    }
    const bool has_temp = !p.at("temperature_uk").is_null();
    const bool has_freq = !p.at("axial_frequency_khz").is_null();
    if (has_temp != has_freq) {
        push("temperature_uk and axial_frequency_khz must be given together");
    }
    if (has_temp && !(p.at("temperature_uk").get<double>() > 0.0)) {
        push("temperature_uk must be positive");
    }
    if (has_freq && !(p.at("axial_frequency_khz").get<double>() > 0.0)) {
        push("axial_frequency_khz must be positive");
    }
    if (!(num("grid_step_mhz") > 0.0)) {
        push("grid_step_mhz must be positive");
    }
    if (!(num("grid_max_mhz") > num("grid_min_mhz"))) {
        push("grid_max_mhz must exceed grid_min_mhz");
    }
    if (!(p.at("n_realizations").get<long>() >= 1)) {
        push("n_realizations must be at least 1");
    }
    for (const auto& v : p.at("survival_grid")) {
        const double s = v.get<double>();
        if (!(s >= 0.0 && s <= 1.0)) {
            push("survival_grid entries must be in [0, 1]");
            break;
        }
    }
}

} // namespace

RunConfig load_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("configuration is not valid JSON: ") + e.what());
    }

    std::vector<std::string> issues;
    if (!doc.is_object()) {
        throw ValidationError({"configuration root must be a JSON object"});
    }

    static const char* kTopLevelKeys[] = {"schema_version", "preset", "parameters",
                                          "seed",           "workers", "output"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool known = false;
        for (const char* k : kTopLevelKeys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            issues.push_back("unknown top-level key '" + key + "'");
        }
    }

    if (doc.contains("schema_version") &&
        (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)) {
        issues.push_back("schema_version must be 1");
    }

    RunConfig config;

    const Preset* preset = nullptr;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) {
            issues.push_back("preset must be a string");
        } else {
            config.preset = doc["preset"].get<std::string>();
            preset = find_preset(config.preset);
            if (preset == nullptr) {
                std::string names;
                for (const auto& p : preset_catalog()) {
                    names += names.empty() ? p.name : ", " + p.name;
                }
                issues.push_back("unknown preset '" + config.preset + "' (available: " + names +
                                 ")");
            }
        }
    }

    json user_params = json::object();
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object()) {
            issues.push_back("parameters must be an object");
        } else {
            user_params = doc["parameters"];
            check_parameter_block(user_params, "parameters", issues);
        }
    }
    if (preset == nullptr && config.preset.empty() && user_params.empty()) {
        issues.push_back("configuration must name a preset or provide a parameters block");
    }
    if (user_params.contains("phase_per_site") && !user_params["phase_per_site"].is_null() &&
        user_params.contains("delta_lambda_nm")) {
        issues.push_back("give either phase_per_site or delta_lambda_nm, not both");
    }
    if ((user_params.contains("temperature_uk") || user_params.contains("axial_frequency_khz")) &&
        user_params.contains("sigma_z_nm")) {
        issues.push_back("give either sigma_z_nm or the temperature/axial-frequency pair");
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() ||
            (doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned() &&
             doc["seed"].get<long long>() < 0)) {
            issues.push_back("seed must be a non-negative integer");
        } else {
            config.seed = doc["seed"].get<std::uint64_t>();
        }
    }
    if (doc.contains("workers")) {
        if (!doc["workers"].is_number_integer() || doc["workers"].get<long>() < 1) {
            issues.push_back("workers must be a positive integer");
        } else {
            config.workers = doc["workers"].get<int>();
        }
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_object()) {
            issues.push_back("output must be an object");
        } else {
            for (const auto& [key, value] : doc["output"].items()) {
                if (key == "path") {
                    if (value.is_string()) {
                        config.out_path = value.get<std::string>();
                    } else {
                        issues.push_back("output.path must be a string");
                    }
                } else if (key == "format") {
                    if (value.is_string()) {
                        config.format = value.get<std::string>();
                    } else {
                        issues.push_back("output.format must be a string");
                    }
                } else {
                    issues.push_back("unknown output key '" + key + "'");
                }
            }
        }
    }
    if (config.format != "csv") {
        issues.push_back("output.format must be 'csv'");
    }

    // Resolve: defaults, then preset values, then user overrides.
    json resolved = default_parameters();
    if (preset != nullptr) {
        resolved.update(preset->parameters);
    }
    if (user_params.is_object()) {
        for (const auto& [key, value] : user_params.items()) {
            if (find_param_spec(key) != nullptr && type_matches(value, find_param_spec(key)->kind)) {
                resolved[key] = value;
            }
        }
    }

    // The resolved block only ever holds well-typed values, so range checks
    // are safe to run even when the document had unknown or mistyped keys;
    // the error lists every violation at once.
    check_ranges(resolved, issues);
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }

    for (const auto& spec : kParamSpecs) {
        const bool from_preset = preset != nullptr && preset->parameters.contains(spec.key);
        const bool from_user = user_params.contains(spec.key);
        if (!from_preset && !from_user) {
            config.defaults_applied.push_back(std::string(spec.key) + " = " +
                                              resolved.at(spec.key).dump());
        }
    }

    config.parameters = std::move(resolved);
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open configuration file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

SweepPlan plan_from_parameters(const json& p, std::uint64_t seed) {
    const double gamma0_mhz = p.at("gamma0_mhz").get<double>();
    const double lambda0_nm = p.at("lambda0_nm").get<double>();
    const double shift = p.at("shift_mhz").get<double>() / gamma0_mhz;

    SweepPlan plan;
    plan.master_seed = seed;
    plan.n_realizations = p.at("n_realizations").get<int>();

    if (p.at("coupling").get<std::string>() == "symmetric") {
        plan.chirality = Chirality::symmetric;
        plan.coupling = CouplingModel::symmetric(p.at("gamma_1d").get<double>(),
                                                 p.at("gamma_prime").get<double>(), shift);
    } else {
        plan.chirality = Chirality::chiral;
        plan.coupling =
            CouplingModel::chiral(p.at("gamma_1d_forward").get<double>(),
                                  p.at("gamma_1d_backward").get<double>(),
                                  p.at("gamma_prime").get<double>(), shift);
    }

    LatticeSpec& lat = plan.lattice;
    lat.n_atoms_expected = p.at("n_atoms").get<long>();
    lat.fill_factor = p.at("fill_factor").get<double>();
    lat.survival = p.at("survival").get<double>();
    lat.n_chains = p.at("n_chains").get<int>();
    if (p.at("phase_per_site").is_null()) {
        // Probe phase accumulated per lattice site. The dispersion factor
        // scales the commensurability mismatch when the lattice period is
        // set by a guided trap wavelength: F = 1 + (lambda/n_eff)|dn_eff/dl|.
        const double mismatch = p.at("trap_dispersion_factor").get<double>() *
                                p.at("delta_lambda_nm").get<double>() / lambda0_nm;
        lat.phase_per_site = std::numbers::pi * (1.0 + mismatch);
    } else {
        lat.phase_per_site = p.at("phase_per_site").get<double>();
    }
    lat.sigma_delta = p.at("sigma_delta_mhz").get<double>() / gamma0_mhz;

    double sigma_z_nm = p.at("sigma_z_nm").get<double>();
    if (!p.at("temperature_uk").is_null()) {
        const double temperature_k = p.at("temperature_uk").get<double>() * 1e-6;
        const double omega_z =
            2.0 * std::numbers::pi * p.at("axial_frequency_khz").get<double>() * 1e3;
        sigma_z_nm = harmonic_sigma_z(temperature_k, constants::cesium_mass, omega_z) * 1e9;
    }
    lat.sigma_z = sigma_z_nm / lambda0_nm;

    if (p.at("probe_k_dispersion").get<bool>()) {
        const double nu0 = constants::speed_of_light / (lambda0_nm * 1e-9);
        plan.k_dispersion_per_gamma0 = gamma0_mhz * 1e6 / nu0;
    }

    const double grid_min = p.at("grid_min_mhz").get<double>();
    const double grid_max = p.at("grid_max_mhz").get<double>();
    const double grid_step = p.at("grid_step_mhz").get<double>();
    const long n_points = std::lround((grid_max - grid_min) / grid_step) + 1;
    plan.detuning_grid.reserve(static_cast<std::size_t>(n_points));
    for (long i = 0; i < n_points; ++i) {
        const double mhz = grid_min + static_cast<double>(i) * grid_step;
        plan.detuning_grid.push_back(ProbeDetuning{mhz / gamma0_mhz});
    }
    return plan;
}

std::vector<NamedRun> build_runs(const RunConfig& config) {
    const Preset* preset = config.preset.empty() ? nullptr : find_preset(config.preset);

    std::vector<NamedRun> runs;
    const auto add_run = [&](const std::string& label, json params) {
        NamedRun run;
        run.label = label;
        run.plan = plan_from_parameters(params, config.seed);
        run.survival_grid = params.at("survival_grid").get<std::vector<double>>();
        run.loss_scan = !run.survival_grid.empty();
        run.parameters = std::move(params);
        runs.push_back(std::move(run));
    };

    if (preset != nullptr && !preset->variants.empty()) {
        for (const auto& variant : preset->variants) {
            json params = config.parameters;
            params.update(variant.patch);
            add_run(variant.label, std::move(params));
        }
    } else {
        add_run("", config.parameters);
    }
    return runs;
}

} // namespace braggsim
