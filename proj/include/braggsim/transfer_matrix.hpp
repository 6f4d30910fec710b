#pragma once

#include <cmath>
#include <complex>
#include <span>

#include "braggsim/errors.hpp"

namespace braggsim {

using Complex = std::complex<double>;

/// Single-scatterer reflection and transmission amplitudes, as seen by a
/// wave incident from either side (the scatterer is modeled as a symmetric
/// two-port).
struct ScatterAmplitudes {
    Complex r{0.0};
    Complex t{1.0};
};

/// 2x2 complex matrix relating the (backward, forward) field amplitudes on
/// the left side of an element to those on its right side:
///
///     (E_L_back, E_L_forw)^T = M (E_R_back, E_R_forw)^T
///
/// The left side is the probe-input side. Chains compose by ordinary matrix
/// multiplication with index 0 (the element nearest the probe source)
/// leftmost in the product. Every matrix produced here has determinant 1.
struct TransferMatrix {
    Complex m11{1.0};
    Complex m12{0.0};
    Complex m21{0.0};
    Complex m22{1.0};

    static TransferMatrix identity() { return {}; }

    Complex det() const { return m11 * m22 - m12 * m21; }

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21,
                a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21,
                a.m21 * b.m12 + a.m22 * b.m22};
    }

    TransferMatrix& operator*=(const TransferMatrix& rhs) {
        *this = *this * rhs;
        return *this;
    }
};

/// Chain reflectance and transmittance (intensity ratios).
struct ChainObservables {
    double reflectance{0.0};
    double transmittance{1.0};
};

/// Transfer matrix of a single scatterer, M = (1/t) [[t^2 - r^2, r], [-r, 1]].
/// Throws DegenerateAmplitudeError when |t| falls below the floor; that only
/// happens for an unphysical lossless scatterer driven exactly on resonance.
inline TransferMatrix atom_matrix(const ScatterAmplitudes& a, double t_floor = 1e-12) {
    if (std::abs(a.t) < t_floor) {
        throw DegenerateAmplitudeError("atom_matrix: |t| below floor, lossless resonant scatterer");
    }
    const Complex inv_t = 1.0 / a.t;
    return {(a.t * a.t - a.r * a.r) * inv_t, a.r * inv_t, -a.r * inv_t, inv_t};
}

/// Free propagation over an accumulated phase k*d: diag(e^{i phase}, e^{-i phase}).
inline TransferMatrix propagation_matrix(double phase) {
    const Complex p(std::cos(phase), std::sin(phase));
    return {p, 0.0, 0.0, std::conj(p)};
}

/// Left-to-right product of an ordered chain of matrices; index 0 is the
/// element nearest the probe input.
inline TransferMatrix compose(std::span<const TransferMatrix> ms) {
    if (ms.empty()) {
        throw DomainError("compose: empty sequence");
    }
    TransferMatrix acc = ms[0];
    for (std::size_t i = 1; i < ms.size(); ++i) {
        acc *= ms[i];
    }
    return acc;
}

/// m^n by repeated squaring, n >= 0.
inline TransferMatrix pow(const TransferMatrix& m, unsigned long n) {
    TransferMatrix acc = TransferMatrix::identity();
    TransferMatrix base = m;
    while (n > 0) {
        if (n & 1UL) {
            acc *= base;
        }
        n >>= 1UL;
        if (n > 0) {
            base *= base;
        }
    }
    return acc;
}

/// Extract T = |1/m22|^2 and R = |m12/m22|^2 from a full-chain matrix.
inline ChainObservables chain_observables(const TransferMatrix& m, double m22_floor = 1e-12) {
    const double n22 = std::norm(m.m22);
    if (!(n22 > m22_floor * m22_floor)) {
        throw SingularMatrixError("chain_observables: |m22| below floor");
    }
    return {std::norm(m.m12) / n22, 1.0 / n22};
}

/// Resonant optical depth proxy, -ln(T).
inline double optical_depth(double transmittance) {
    if (!(transmittance > 0.0)) {
        throw DomainError("optical_depth: transmittance must be positive");
    }
    return -std::log(transmittance);
}

} // namespace braggsim
