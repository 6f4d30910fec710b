#include "braggsim/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "braggsim/constants.hpp"

namespace braggsim {

std::vector<std::uint8_t> sample_occupancy(const LatticeSpec& spec, long site_count,
                                           SplitMix64& rng) {
    const double p = spec.occupancy_probability();
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(site_count));
    if (spec.n_chains == 1) {
        for (auto& c : occ) {
            c = rng.next_double() < p ? 1 : 0;
        }
        return occ;
    }
    // Two parallel chains per axial site: no atom, one atom on either chain,
    // or one atom on both.
    const double p0 = (1.0 - p) * (1.0 - p);
    const double p01 = p0 + 2.0 * p * (1.0 - p);
    for (auto& c : occ) {
        const double u = rng.next_double();
        c = u < p0 ? 0 : (u < p01 ? 1 : 2);
    }
    return occ;
}

std::vector<std::uint8_t> sample_occupancy(const LatticeSpec& spec, long site_count,
                                           std::uint64_t rng_seed) {
    SplitMix64 rng(rng_seed);
    return sample_occupancy(spec, site_count, rng);
}

ChainRealization realize_chain(const LatticeSpec& spec, std::uint64_t seed) {
    spec.validate();
    SplitMix64 rng(seed);

    const long sites = spec.site_count();
    const auto occupancy = sample_occupancy(spec, sites, rng);

    const double sigma_phase = 2.0 * std::numbers::pi * spec.sigma_z;

    ChainRealization out;
    out.seed = seed;
    out.atoms.reserve(static_cast<std::size_t>(
        std::ceil(sites * spec.n_chains * spec.occupancy_probability()) + 64));

    // Draw order is fixed: sites in order, one normal pair per atom
    // (position offset first, detuning offset second). The pair is consumed
    // even when both spreads are zero so that occupancy and offset draws stay
    // aligned across parameter changes.
    for (long i = 0; i < sites; ++i) {
        const double nominal = static_cast<double>(i) * spec.phase_per_site;
        for (int a = 0; a < occupancy[static_cast<std::size_t>(i)]; ++a) {
            const auto [z_pos, z_det] = rng.next_normal_pair();
            out.atoms.push_back({nominal + sigma_phase * z_pos, spec.sigma_delta * z_det});
        }
    }

    std::stable_sort(out.atoms.begin(), out.atoms.end(),
                     [](const LatticeAtom& a, const LatticeAtom& b) {
                         return a.phase_position < b.phase_position;
                     });
    return out;
}

double harmonic_sigma_z(double temperature_k, double mass_kg, double omega_z) {
    if (!(temperature_k > 0.0) || !(mass_kg > 0.0) || !(omega_z > 0.0)) {
        throw DomainError("harmonic_sigma_z: all arguments must be positive");
    }
    return std::sqrt(constants::k_boltzmann * temperature_k / (mass_kg * omega_z * omega_z));
}

double debye_waller(double wavenumber, double sigma_z) {
    if (!(sigma_z >= 0.0)) {
        throw DomainError("debye_waller: sigma_z must be non-negative");
    }
    const double ks = wavenumber * sigma_z;
    return std::exp(-4.0 * ks * ks);
}

} // namespace braggsim
