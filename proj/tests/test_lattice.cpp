#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "braggsim/constants.hpp"
#include "braggsim/lattice.hpp"

using namespace braggsim;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

LatticeSpec fitted_spec() {
    LatticeSpec spec;
    spec.n_atoms_expected = 2000;
    spec.fill_factor = 0.3;
    spec.n_chains = 2;
    spec.phase_per_site = pi * (1.0 + 0.12 / 852.347);
    return spec;
}

} // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("site count keeps the expected atom number") {
    CHECK(fitted_spec().site_count() == 3333); // round(2000 / 0.6)

    LatticeSpec single;
    single.n_atoms_expected = 2000;
    single.fill_factor = 0.5;
    single.n_chains = 1;
    CHECK(single.site_count() == 4000);

    LatticeSpec overridden = fitted_spec();
    overridden.site_count_override = 1234;
    CHECK(overridden.site_count() == 1234);
}

TEST_CASE("spec validation rejects out-of-range fields") {
    LatticeSpec spec = fitted_spec();
    spec.fill_factor = 1.3;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = fitted_spec();
    spec.n_chains = 3;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = fitted_spec();
    spec.phase_per_site = 0.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("occupancy limits") {
    LatticeSpec spec = fitted_spec();
    spec.fill_factor = 0.0;
    for (const auto c : sample_occupancy(spec, 1000, 5)) {
        CHECK(c == 0);
    }
    spec.fill_factor = 1.0;
    for (const auto c : sample_occupancy(spec, 1000, 5)) {
        CHECK(c == 2);
    }
}

TEST_CASE("occupancy frequencies follow the two-chain filling model") {
    LatticeSpec spec = fitted_spec();
    const long sites = 1000000;
    const auto occ = sample_occupancy(spec, sites, 2024);
    std::array<long, 3> counts{0, 0, 0};
    for (const auto c : occ) {
        ++counts[c];
    }
    CHECK(std::abs(counts[0] / double(sites) - 0.49) < 0.002);
    CHECK(std::abs(counts[1] / double(sites) - 0.42) < 0.002);
    CHECK(std::abs(counts[2] / double(sites) - 0.09) < 0.002);
}

TEST_CASE("loss rescales the effective occupancy") {
    LatticeSpec spec = fitted_spec();
    spec.survival = 0.5; // effective per-chain occupancy 0.15
    const long sites = 1000000;
    const auto occ = sample_occupancy(spec, sites, 77);
    std::array<long, 3> counts{0, 0, 0};
    for (const auto c : occ) {
        ++counts[c];
    }
    CHECK(std::abs(counts[1] / double(sites) - 2.0 * 0.15 * 0.85) < 0.002);
    CHECK(std::abs(counts[2] / double(sites) - 0.15 * 0.15) < 0.002);
}

TEST_CASE("single-chain occupancy is Bernoulli") {
    LatticeSpec spec;
    spec.n_chains = 1;
    spec.fill_factor = 0.5;
    const long sites = 1000000;
    const auto occ = sample_occupancy(spec, sites, 31);
    long ones = 0;
    for (const auto c : occ) {
        REQUIRE(c <= 1);
        ones += c;
    }
    CHECK(std::abs(ones / double(sites) - 0.5) < 0.002);
}

TEST_CASE("ordered limit: full lattice, no disorder") {
    LatticeSpec spec;
    spec.n_atoms_expected = 100;
    spec.fill_factor = 1.0;
    spec.n_chains = 2;
    spec.phase_per_site = pi;
    const auto chain = realize_chain(spec, 9);
    REQUIRE(chain.atoms.size() == 100);
    for (std::size_t i = 0; i < chain.atoms.size(); ++i) {
        CHECK(chain.atoms[i].phase_position == double(i / 2) * pi);
        CHECK(chain.atoms[i].detuning_offset == 0.0);
    }
}

TEST_CASE("realizations are bitwise deterministic in (spec, seed)") {
    LatticeSpec spec = fitted_spec();
    spec.sigma_delta = 0.4;
    spec.sigma_z = 0.02;
    const auto a = realize_chain(spec, 12345);
    const auto b = realize_chain(spec, 12345);
    REQUIRE(a.atoms.size() == b.atoms.size());
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        CHECK(a.atoms[i].phase_position == b.atoms[i].phase_position);
        CHECK(a.atoms[i].detuning_offset == b.atoms[i].detuning_offset);
    }
    const auto c = realize_chain(spec, 12346);
    CHECK(c.atoms.size() != a.atoms.size()); // different draw, almost surely
}

TEST_CASE("atoms come out sorted by position") {
    LatticeSpec spec = fitted_spec();
    spec.sigma_z = 0.1;
    const auto chain = realize_chain(spec, 55);
    for (std::size_t i = 1; i < chain.atoms.size(); ++i) {
        REQUIRE(chain.atoms[i].phase_position >= chain.atoms[i - 1].phase_position);
    }
}

TEST_CASE("position jitter keeps the mean spacing at the nominal value") {
    LatticeSpec spec;
    spec.n_atoms_expected = 100000;
    spec.fill_factor = 1.0;
    spec.n_chains = 1;
    spec.phase_per_site = pi;
    spec.sigma_z = 0.02;
    const auto chain = realize_chain(spec, 4242);
    REQUIRE(chain.atoms.size() == 100000);
    const double span =
        chain.atoms.back().phase_position - chain.atoms.front().phase_position;
    const double mean_spacing = span / double(chain.atoms.size() - 1);
    // Zero-mean offsets: the mean nearest-neighbor spacing telescopes to the
    // end-to-end span, whose std error is sqrt(2) sigma_phase / (n - 1).
    const double se = std::sqrt(2.0) * 2.0 * pi * spec.sigma_z / double(chain.atoms.size() - 1);
    CHECK(std::abs(mean_spacing - pi) < 3.0 * se + 1e-12);
}

TEST_CASE("ensemble-mean atom count matches the expectation") {
    LatticeSpec spec = fitted_spec();
    const long sites = spec.site_count();
    const double p = spec.occupancy_probability();
    const double expectation = 2.0 * double(sites) * p;

    double total = 0.0;
    const int n_realizations = 1000;
    for (int i = 0; i < n_realizations; ++i) {
        total += double(realize_chain(spec, derive_stream_seed(777, i)).atoms.size());
    }
    const double mean = total / n_realizations;
    const double se = std::sqrt(2.0 * sites * p * (1.0 - p) / n_realizations);
    CHECK(std::abs(mean - expectation) < 3.0 * se);
    CHECK(std::abs(expectation - double(spec.n_atoms_expected)) < 1.0);
}

TEST_CASE("harmonic spread values") {
    const double omega_258 = 2.0 * pi * 258e3;
    const double omega_215 = 2.0 * pi * 215e3;
    const double sz_258 = harmonic_sigma_z(20e-6, constants::cesium_mass, omega_258);
    const double sz_215 = harmonic_sigma_z(20e-6, constants::cesium_mass, omega_215);
    CHECK(sz_258 * 1e9 == Approx(21.8).epsilon(0.02)); // quoted as ~22 nm
    CHECK(sz_215 * 1e9 == Approx(26.2).epsilon(0.02)); // quoted as ~26 nm

    // Square-root temperature scaling, exact in floating point.
    CHECK(harmonic_sigma_z(80e-6, constants::cesium_mass, omega_258) == 2.0 * sz_258);

    CHECK_THROWS_AS(harmonic_sigma_z(0.0, constants::cesium_mass, omega_258), DomainError);
    CHECK_THROWS_AS(harmonic_sigma_z(20e-6, -1.0, omega_258), DomainError);
}

TEST_CASE("debye-waller factor") {
    CHECK(debye_waller(7.4e6, 0.0) == 1.0);
    const double k = 2.0 * pi / 852.347e-9;
    CHECK(debye_waller(k, 22e-9) == Approx(0.9001).epsilon(5e-4));
    CHECK(debye_waller(k, 26e-9) == Approx(0.8633).epsilon(5e-4));
    CHECK_THROWS_AS(debye_waller(k, -1e-9), DomainError);
}

TEST_SUITE_END();
