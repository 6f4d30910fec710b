#include <doctest.h>

#include <cmath>
#include <numbers>

#include "braggsim/oracle.hpp"
#include "braggsim/spectra.hpp"
#include "test_helpers.hpp"

using namespace braggsim;
using doctest::Approx;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("empty problem transmits everything") {
    const auto obs = solve_multiple_scattering(OracleProblem{});
    CHECK(obs.reflectance == 0.0);
    CHECK(obs.transmittance == 1.0);
}

TEST_CASE("single atom returns the squared amplitudes exactly") {
    const auto c = CouplingModel::symmetric(0.02, 0.7);
    const auto a = symmetric_amplitudes(c, ProbeDetuning{1.3});
    OracleProblem problem;
    problem.atoms.push_back({0.0, a});
    const auto obs = solve_multiple_scattering(problem);
    CHECK(obs.reflectance == Approx(std::norm(a.r)).epsilon(1e-14));
    CHECK(obs.transmittance == Approx(std::norm(a.t)).epsilon(1e-14));
}

TEST_CASE("two atoms reproduce the Airy closed form") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = CouplingModel::symmetric(0.001 + 0.05 * rng.next_double(),
                                                0.2 + 1.5 * rng.next_double());
        const auto a = symmetric_amplitudes(c, ProbeDetuning{-15.0 + 30.0 * rng.next_double()});
        const double phase = 2.0 * std::numbers::pi * rng.next_double();

        OracleProblem problem;
        problem.atoms.push_back({0.0, a});
        problem.atoms.push_back({phase, a});
        const auto obs = solve_multiple_scattering(problem);
        const auto [r_ref, t_ref] = testutil::airy_two_mirror(a, phase);
        CHECK(obs.reflectance == Approx(r_ref).epsilon(1e-12));
        CHECK(obs.transmittance == Approx(t_ref).epsilon(1e-12));
    }
}

TEST_CASE("five-atom symmetric chain agrees with the transfer-matrix engine") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = testutil::random_instance(rng, 5, /*allow_chiral=*/false);
        const auto tmm = evaluate_chain(inst.chain, inst.coupling, inst.mode, inst.delta);
        const auto ref = solve_multiple_scattering(testutil::oracle_problem_for(inst));
        CHECK(std::abs(tmm.reflectance - ref.reflectance) < 1e-10);
        CHECK(std::abs(tmm.transmittance - ref.transmittance) < 1e-10);
    }
}

TEST_CASE("both coupling modes agree with the engine on random instances") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = testutil::random_instance(rng, 8);
        const auto tmm = evaluate_chain(inst.chain, inst.coupling, inst.mode, inst.delta);
        const auto ref = solve_multiple_scattering(testutil::oracle_problem_for(inst));
        CHECK(std::abs(tmm.reflectance - ref.reflectance) < 1e-10);
        CHECK(std::abs(tmm.transmittance - ref.transmittance) < 1e-10);
    }
}

TEST_CASE("oracle chains stay passive") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        auto inst = testutil::random_instance(rng, 8);
        const auto ref = solve_multiple_scattering(testutil::oracle_problem_for(inst));
        CHECK(ref.reflectance + ref.transmittance <= 1.0 + 1e-10);
    }
}

TEST_CASE("atom cap is enforced") {
    OracleProblem problem;
    problem.max_atoms = 3;
    const auto c = CouplingModel::symmetric(0.01, 1.0);
    const auto a = symmetric_amplitudes(c, ProbeDetuning{0.5});
    for (int i = 0; i < 4; ++i) {
        problem.atoms.push_back({double(i), a});
    }
    CHECK_THROWS_AS(solve_multiple_scattering(problem), DomainError);
}

TEST_SUITE_END();
