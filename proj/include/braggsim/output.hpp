#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "braggsim/config.hpp"
#include "braggsim/spectra.hpp"

namespace braggsim {

/// Spectrum table: header row plus one row per grid point, columns
/// delta_mhz, r_mean, r_std, t_mean, t_std, n_realizations.
std::string spectrum_csv(const SpectrumResult& result, double gamma0_mhz);

/// Loss-scan table: columns survival, expected_atoms, peak_r_mean.
std::string loss_scan_csv(std::span<const LossScanPoint> points);

/// Provenance sidecar: everything needed to re-run the table bit-identically
/// (resolved parameters, seed, applied defaults, code version).
nlohmann::json run_metadata(const RunConfig& config, const NamedRun& run);

/// Execute every run of the configuration and write its table plus metadata
/// sidecar. Returns the list of files written.
std::vector<std::string> execute(const RunConfig& config);

} // namespace braggsim
