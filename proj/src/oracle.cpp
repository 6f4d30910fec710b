#include "braggsim/oracle.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace braggsim {

// Unknowns, for atoms ordered left to right (j = 1..N):
//   u_j: forward-propagating field incident on atom j from the left
//   v_j: backward-propagating field incident on atom j from the right
// Each atom scatters both incident fields with its (r, t); free propagation
// between neighbors multiplies by e^{i psi_j} with psi_j the phase distance.
// With the probe of unit amplitude entering from the left:
//   u_1 = 1
//   u_{j+1} = e^{i psi_j} (t_j u_j + r_j v_j)
//   v_j     = e^{i psi_j} (r_{j+1} u_{j+1} + t_{j+1} v_{j+1})
//   v_N = 0
// The reflected amplitude is r_1 u_1 + t_1 v_1 and the transmitted one is
// t_N u_N + r_N v_N.
ChainObservables solve_multiple_scattering(const OracleProblem& problem) {
    const auto& atoms = problem.atoms;
    const long n = static_cast<long>(atoms.size());
    if (n == 0) {
        return {0.0, 1.0};
    }
    if (n > problem.max_atoms) {
        throw DomainError("solve_multiple_scattering: instance exceeds the atom cap");
    }

    using Mat = Eigen::MatrixXcd;
    using Vec = Eigen::VectorXcd;

    Mat a = Mat::Zero(2 * n, 2 * n);
    Vec b = Vec::Zero(2 * n);

    const auto u = [](long j) { return j; };         // index of u_j, j = 0..n-1
    const auto v = [n](long j) { return n + j; };    // index of v_j

    a(u(0), u(0)) = 1.0;
    b(u(0)) = 1.0;
    a(v(n - 1), v(n - 1)) = 1.0;

    for (long j = 0; j + 1 < n; ++j) {
        const double psi = atoms[j + 1].phase_position - atoms[j].phase_position;
        const Complex phase(std::cos(psi), std::sin(psi));

        a(u(j + 1), u(j + 1)) = 1.0;
        a(u(j + 1), u(j)) = -phase * atoms[j].amplitudes.t;
        a(u(j + 1), v(j)) = -phase * atoms[j].amplitudes.r;

        a(v(j), v(j)) = 1.0;
        a(v(j), u(j + 1)) = -phase * atoms[j + 1].amplitudes.r;
        a(v(j), v(j + 1)) = -phase * atoms[j + 1].amplitudes.t;
    }

    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible()) {
        throw SingularMatrixError("solve_multiple_scattering: degenerate scattering system");
    }
    const Vec x = lu.solve(b);

    const Complex reflected = atoms[0].amplitudes.r * x(u(0)) + atoms[0].amplitudes.t * x(v(0));
    const Complex transmitted =
        atoms[n - 1].amplitudes.t * x(u(n - 1)) + atoms[n - 1].amplitudes.r * x(v(n - 1));
    return {std::norm(reflected), std::norm(transmitted)};
}

} // namespace braggsim
