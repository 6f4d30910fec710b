#pragma once

#include <vector>

#include "braggsim/transfer_matrix.hpp"

namespace braggsim {

/// Small multiple-scattering instance for cross-validation: atoms ordered by
/// position, probe incident from the left. Each atom scatters with its own
/// (r, t), applied identically to incidence from either side.
struct OracleAtom {
    double phase_position;
    ScatterAmplitudes amplitudes;
};

struct OracleProblem {
    std::vector<OracleAtom> atoms;
    int max_atoms = 12;
};

/// Brute-force reference solution: sets up the 2N-unknown linear system for
/// the forward/backward field amplitudes incident on every atom and solves
/// it directly, with no transfer-matrix composition anywhere on the path.
/// Throws DomainError when the instance exceeds max_atoms and
/// SingularMatrixError when the system is degenerate.
ChainObservables solve_multiple_scattering(const OracleProblem& problem);

} // namespace braggsim
