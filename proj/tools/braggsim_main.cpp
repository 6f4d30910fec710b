#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "braggsim/config.hpp"
#include "braggsim/oracle.hpp"
#include "braggsim/output.hpp"
#include "braggsim/presets.hpp"
#include "braggsim/version.hpp"

namespace {

using braggsim::ChainRealization;
using braggsim::Chirality;
using braggsim::CouplingModel;
using braggsim::ProbeDetuning;

void emit_error_record(const std::string& kind, const std::string& message,
                       const std::vector<std::string>& issues = {}) {
    nlohmann::json record{{"error", {{"kind", kind}, {"message", message}}}};
    if (!issues.empty()) {
        record["error"]["issues"] = issues;
    }
    std::cerr << record.dump() << "\n";
}

int run_simulate(const std::string& config_path, const CLI::Option* seed_opt, std::uint64_t seed,
                 const CLI::Option* workers_opt, int workers, const CLI::Option* out_opt,
                 const std::string& out, const CLI::Option* format_opt,
                 const std::string& format) {
    try {
        braggsim::RunConfig config = braggsim::load_config_file(config_path);
        if (*seed_opt) {
            config.seed = seed;
        }
        if (*workers_opt) {
            config.workers = workers;
        }
        if (*out_opt) {
            config.out_path = out;
        }
        if (*format_opt) {
            config.format = format;
            if (format != "csv") {
                throw braggsim::ValidationError({"output.format must be 'csv'"});
            }
        }
        const auto files = braggsim::execute(config);
        for (const auto& f : files) {
            std::cout << f << "\n";
        }
        return 0;
    } catch (const braggsim::ValidationError& e) {
        emit_error_record("validation", "configuration invalid", e.issues());
        return 1;
    } catch (const braggsim::ParseError& e) {
        emit_error_record("validation", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error_record("runtime", e.what());
        return 2;
    }
}

int run_preset_list() {
    for (const auto& p : braggsim::preset_catalog()) {
        std::printf("%-12s %s\n", p.name.c_str(), p.description.c_str());
        for (const auto& v : p.variants) {
            std::printf("%-12s   - %s\n", "", v.label.c_str());
        }
    }
    return 0;
}

// Hidden debug mode: cross-check the transfer-matrix engine against the
// brute-force multiple-scattering solver on random small chains.
int run_oracle_check(int instances, std::uint64_t seed, int max_atoms) {
    braggsim::SplitMix64 rng(seed);
    double max_dr = 0.0;
    double max_dt = 0.0;
    try {
        for (int k = 0; k < instances; ++k) {
            const long n = 1 + static_cast<long>(rng.next() % static_cast<std::uint64_t>(max_atoms));
            const bool chiral = (rng.next() & 1ULL) != 0;
            const double gamma_prime = 0.2 + 1.6 * rng.next_double();
            CouplingModel coupling =
                chiral ? CouplingModel::chiral(0.001 + 0.08 * rng.next_double(),
                                               0.001 + 0.02 * rng.next_double(), gamma_prime)
                       : CouplingModel::symmetric(0.001 + 0.05 * rng.next_double(), gamma_prime);
            const Chirality mode = chiral ? Chirality::chiral : Chirality::symmetric;
            const ProbeDetuning delta{-30.0 + 60.0 * rng.next_double()};

            ChainRealization chain;
            chain.seed = seed;
            double position = 0.0;
            for (long j = 0; j < n; ++j) {
                position += 2.0 * std::numbers::pi * rng.next_double();
                chain.atoms.push_back({position, 0.5 * rng.next_normal_pair().first});
            }

            braggsim::OracleProblem problem;
            problem.max_atoms = max_atoms;
            for (const auto& atom : chain.atoms) {
                problem.atoms.push_back(
                    {atom.phase_position,
                     braggsim::amplitudes(coupling, mode,
                                          ProbeDetuning{delta.delta + atom.detuning_offset})});
            }

            const auto tmm = braggsim::evaluate_chain(chain, coupling, mode, delta);
            const auto ref = braggsim::solve_multiple_scattering(problem);
            max_dr = std::max(max_dr, std::abs(tmm.reflectance - ref.reflectance));
            max_dt = std::max(max_dt, std::abs(tmm.transmittance - ref.transmittance));
        }
    } catch (const std::exception& e) {
        emit_error_record("runtime", e.what());
        return 2;
    }
    const bool ok = max_dr < 1e-10 && max_dt < 1e-10;
    std::printf("oracle check: %d instances, max |dR| = %.3e, max |dT| = %.3e -> %s\n", instances,
                max_dr, max_dt, ok ? "PASS" : "FAIL");
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-photon reflection/transmission spectra of emitter chains coupled "
                 "to a 1D waveguide"};
    app.set_version_flag("--version", braggsim::version);
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "run the sweeps described by a config file");
    std::string config_path;
    simulate->add_option("config", config_path, "JSON configuration file")->required();
    std::uint64_t seed = 1;
    auto* seed_opt = simulate->add_option("--seed", seed, "override the master seed");
    int workers = 1;
    auto* workers_opt =
        simulate->add_option("--workers", workers, "worker threads (output is identical "
                                                   "for any value)");
    std::string out;
    auto* out_opt = simulate->add_option("--out", out, "output path stem");
    std::string format = "csv";
    auto* format_opt = simulate->add_option("--format", format, "output format (csv)");

    auto* preset = app.add_subcommand("preset", "preset utilities");
    auto* preset_list = preset->add_subcommand("list", "list available presets");

    auto* oracle = app.add_subcommand("oracle");
    oracle->group(""); // debug tool, hidden from help
    auto* oracle_check = oracle->add_subcommand("check");
    int instances = 200;
    oracle_check->add_option("--instances", instances);
    std::uint64_t oracle_seed = 1;
    oracle_check->add_option("--seed", oracle_seed);
    int max_atoms = 8;
    oracle_check->add_option("--max-atoms", max_atoms);

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        return run_simulate(config_path, seed_opt, seed, workers_opt, workers, out_opt, out,
                            format_opt, format);
    }
    if (preset->parsed() && preset_list->parsed()) {
        return run_preset_list();
    }
    if (oracle->parsed() && oracle_check->parsed()) {
        return run_oracle_check(instances, oracle_seed, max_atoms);
    }
    std::cerr << app.help();
    return 1;
}
