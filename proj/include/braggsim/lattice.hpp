#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "braggsim/errors.hpp"
#include "braggsim/rng.hpp"

namespace braggsim {

/// Geometry and disorder parameters of the trapped-atom lattice. Sites are
/// axial trapping positions spaced by `phase_per_site` (= k*d radians); each
/// site belongs to `n_chains` parallel chains and holds at most one atom per
/// chain. All rates are in Gamma0 units; `sigma_z` is in units of the probe
/// wavelength.
struct LatticeSpec {
    long n_atoms_expected = 2000;
    double fill_factor = 1.0;  // per site, per chain
    double survival = 1.0;     // retention probability in the loss model
    int n_chains = 2;
    double phase_per_site = std::numbers::pi;
    double sigma_delta = 0.0;      // inhomogeneous broadening std dev, Gamma0 units
    double sigma_z = 0.0;          // axial thermal spread, units of the wavelength
    long site_count_override = 0;  // 0: derive from the expected atom count

    /// Per-chain probability that a site actually holds an atom.
    double occupancy_probability() const { return fill_factor * survival; }

    /// Number of axial sites, chosen so the ensemble-mean atom number equals
    /// n_atoms_expected: sites = round(N / (n_chains * f * eta)).
    long site_count() const {
        if (site_count_override > 0) {
            return site_count_override;
        }
        const double p = occupancy_probability();
        if (!(p > 0.0)) {
            return 0;
        }
        const long sites = std::lround(static_cast<double>(n_atoms_expected) / (n_chains * p));
        return sites < 1 ? 1 : sites;
    }

    void validate() const {
        if (!(n_atoms_expected >= 0)) {
            throw DomainError("LatticeSpec: n_atoms_expected must be non-negative");
        }
        if (!(fill_factor >= 0.0 && fill_factor <= 1.0)) {
            throw DomainError("LatticeSpec: fill_factor must be in [0, 1]");
        }
        if (!(survival >= 0.0 && survival <= 1.0)) {
            throw DomainError("LatticeSpec: survival must be in [0, 1]");
        }
        if (n_chains != 1 && n_chains != 2) {
            throw DomainError("LatticeSpec: n_chains must be 1 or 2");
        }
        if (!(phase_per_site > 0.0)) {
            throw DomainError("LatticeSpec: phase_per_site must be positive");
        }
        if (!(sigma_delta >= 0.0) || !(sigma_z >= 0.0)) {
            throw DomainError("LatticeSpec: disorder spreads must be non-negative");
        }
    }
};

struct LatticeAtom {
    double phase_position;  // k*z in radians
    double detuning_offset; // Gamma0 units
};

/// One sampled configuration of the lattice: atoms sorted by axial position,
/// each carrying its own detuning offset. Fully determined by (spec, seed).
struct ChainRealization {
    std::vector<LatticeAtom> atoms;
    std::uint64_t seed = 0;
};

/// Per-site occupancies drawn i.i.d. from the two-chain filling model with
/// loss: P(0) = (1 - eta f)^2, P(1) = 2 eta f (1 - eta f), P(2) = (eta f)^2.
/// With a single chain the distribution is Bernoulli(eta f) over {0, 1}.
std::vector<std::uint8_t> sample_occupancy(const LatticeSpec& spec, long site_count,
                                           SplitMix64& rng);
std::vector<std::uint8_t> sample_occupancy(const LatticeSpec& spec, long site_count,
                                           std::uint64_t rng_seed);

/// Draw one full chain realization: occupancy per site, then one Gaussian
/// axial phase offset ~ N(0, (2 pi sigma_z)^2) and one Gaussian detuning
/// offset ~ N(0, sigma_delta^2) per atom, then sort by position. Bitwise
/// deterministic for fixed (spec, seed).
ChainRealization realize_chain(const LatticeSpec& spec, std::uint64_t seed);

/// RMS axial spread in a harmonic trap, sigma_z = sqrt(kB T / (m omega_z^2)).
/// Takes the temperature in kelvin, mass in kg and the *angular* trap
/// frequency in rad/s; returns meters.
double harmonic_sigma_z(double temperature_k, double mass_kg, double omega_z);

/// Debye-Waller factor exp(-4 k^2 sigma_z^2) for Bragg reflection off atoms
/// with axial spread sigma_z (any length unit consistent with k).
double debye_waller(double wavenumber, double sigma_z);

} // namespace braggsim
