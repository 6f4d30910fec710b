#pragma once

#include <complex>

#include "braggsim/errors.hpp"
#include "braggsim/transfer_matrix.hpp"

namespace braggsim {

enum class Chirality { symmetric, chiral };

/// Radiative rates of one emitter coupled to the guided mode, all in units
/// of the free-space linewidth Gamma0. The forward rate is the one
/// co-propagating with the probe. `shift` is the trap-induced displacement
/// of the transition, also in Gamma0 units.
class CouplingModel {
public:
    /// Equal forward/backward guided rates, each gamma_1d / 2.
    static CouplingModel symmetric(double gamma_1d, double gamma_prime, double shift = 0.0) {
        validate_rates(gamma_1d / 2.0, gamma_1d / 2.0, gamma_prime);
        return CouplingModel(gamma_1d / 2.0, gamma_1d / 2.0, gamma_prime, shift, true);
    }

    /// Direction-asymmetric guided rates.
    static CouplingModel chiral(double forward, double backward, double gamma_prime,
                                double shift = 0.0) {
        validate_rates(forward, backward, gamma_prime);
        return CouplingModel(forward, backward, gamma_prime, shift, false);
    }

    double gamma_1d_forward() const { return forward_; }
    double gamma_1d_backward() const { return backward_; }
    double gamma_prime() const { return gamma_prime_; }
    double shift() const { return shift_; }

    /// Total guided-mode rate.
    double gamma_1d() const { return forward_ + backward_; }
    /// Total decay rate Gamma = Gamma_1D^forw + Gamma_1D^back + Gamma'.
    double total() const { return forward_ + backward_ + gamma_prime_; }

    bool is_symmetric() const { return symmetric_; }

    // Default: the weak symmetric coupling typical of a nanofiber trap.
    CouplingModel() : CouplingModel(0.005, 0.005, 1.0, 0.0, true) {}

private:
    CouplingModel(double forward, double backward, double gamma_prime, double shift,
                  bool symmetric)
        : forward_(forward), backward_(backward), gamma_prime_(gamma_prime), shift_(shift),
          symmetric_(symmetric) {}

    static void validate_rates(double forward, double backward, double gamma_prime) {
        if (!(forward >= 0.0) || !(backward >= 0.0) || !(gamma_prime >= 0.0)) {
            throw DomainError("CouplingModel: rates must be non-negative and finite");
        }
        if (!(forward + backward + gamma_prime > 0.0)) {
            throw DomainError("CouplingModel: total decay rate must be positive");
        }
    }

    double forward_;
    double backward_;
    double gamma_prime_;
    double shift_;
    bool symmetric_;
};

/// Probe detuning from the unshifted atomic resonance, in Gamma0 units.
struct ProbeDetuning {
    double delta{0.0};
};

/// Symmetric-coupling amplitudes: r = -Gamma_1D / (Gamma - 2i delta_eff),
/// t = 1 + r, with delta_eff = delta - shift.
inline ScatterAmplitudes symmetric_amplitudes(const CouplingModel& c, ProbeDetuning d) {
    if (!c.is_symmetric()) {
        throw DomainError("symmetric_amplitudes: coupling was not built symmetric");
    }
    const double delta_eff = d.delta - c.shift();
    const Complex r = -c.gamma_1d() / Complex(c.total(), -2.0 * delta_eff);
    return {r, 1.0 + r};
}

/// Chiral-coupling amplitudes: r = -2 sqrt(Gf Gb) / (Gamma - 2i delta_eff),
/// t = 1 - (Gf + Gb) / (Gamma - 2i delta_eff). Reflection depends on the
/// rates only through the product Gf*Gb, so the probe-direction labeling of
/// forward vs backward does not change R.
inline ScatterAmplitudes chiral_amplitudes(const CouplingModel& c, ProbeDetuning d) {
    const double delta_eff = d.delta - c.shift();
    const Complex inv_denom = 1.0 / Complex(c.total(), -2.0 * delta_eff);
    const double gf = c.gamma_1d_forward();
    const double gb = c.gamma_1d_backward();
    return {-2.0 * std::sqrt(gf * gb) * inv_denom, 1.0 - (gf + gb) * inv_denom};
}

inline ScatterAmplitudes amplitudes(const CouplingModel& c, Chirality mode, ProbeDetuning d) {
    return mode == Chirality::symmetric ? symmetric_amplitudes(c, d) : chiral_amplitudes(c, d);
}

} // namespace braggsim
