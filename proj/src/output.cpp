#include "braggsim/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "braggsim/version.hpp"

namespace braggsim {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write output file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw Error("write failed for '" + path + "'");
    }
}

} // namespace

std::string spectrum_csv(const SpectrumResult& result, double gamma0_mhz) {
    std::string text = "delta_mhz,r_mean,r_std,t_mean,t_std,n_realizations\n";
    for (const auto& p : result.points) {
        text += format_double(p.delta * gamma0_mhz);
        text += ',';
        text += format_double(p.r_mean);
        text += ',';
        text += format_double(p.r_std);
        text += ',';
        text += format_double(p.t_mean);
        text += ',';
        text += format_double(p.t_std);
        text += ',';
        text += std::to_string(result.plan.n_realizations);
        text += '\n';
    }
    return text;
}

std::string loss_scan_csv(std::span<const LossScanPoint> points) {
    std::string text = "survival,expected_atoms,peak_r_mean\n";
    for (const auto& p : points) {
        text += format_double(p.survival);
        text += ',';
        text += format_double(p.expected_atoms);
        text += ',';
        text += format_double(p.peak_reflectance);
        text += '\n';
    }
    return text;
}

nlohmann::json run_metadata(const RunConfig& config, const NamedRun& run) {
    // The worker count is deliberately absent: results are worker-count
    // independent, and the sidecar must be byte-identical across schedules.
    nlohmann::json meta{
        {"generator", "braggsim"},
        {"code_version", version},
        {"config_schema_version", 1},
        {"preset", config.preset.empty() ? nlohmann::json() : nlohmann::json(config.preset)},
        {"label", run.label},
        {"mode", run.loss_scan ? "loss_scan" : "sweep"},
        {"seed", config.seed},
        {"parameters", run.parameters},
        {"defaults_applied", config.defaults_applied},
    };
    meta["derived"] = nlohmann::json{
        {"phase_per_site_rad", run.plan.lattice.phase_per_site},
        {"site_count", run.plan.lattice.site_count()},
        {"sigma_delta_gamma0", run.plan.lattice.sigma_delta},
        {"sigma_z_wavelengths", run.plan.lattice.sigma_z},
        {"shift_gamma0", run.plan.coupling.shift()},
        {"grid_points", run.plan.detuning_grid.size()},
    };
    meta["columns"] = run.loss_scan
                          ? nlohmann::json::array({"survival", "expected_atoms", "peak_r_mean"})
                          : nlohmann::json::array({"delta_mhz", "r_mean", "r_std", "t_mean",
                                                   "t_std", "n_realizations"});
    return meta;
}

std::vector<std::string> execute(const RunConfig& config) {
    const auto runs = build_runs(config);

    std::vector<std::string> written;
    for (const auto& run : runs) {
        const std::string stem =
            run.label.empty() ? config.out_path : config.out_path + "_" + run.label;

        std::string table;
        if (run.loss_scan) {
            const auto points =
                reflectance_vs_atom_number(run.plan, run.survival_grid, config.workers);
            table = loss_scan_csv(points);
        } else {
            const auto result = run_sweep(run.plan, config.workers);
            table = spectrum_csv(result, run.parameters.at("gamma0_mhz").get<double>());
        }

        const std::string table_path = stem + ".csv";
        const std::string meta_path = stem + ".meta.json";
        write_text_file(table_path, table);
        write_text_file(meta_path, run_metadata(config, run).dump(2) + "\n");
        written.push_back(table_path);
        written.push_back(meta_path);
    }
    return written;
}

} // namespace braggsim
