#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>

#include "vacline/model.hpp"

namespace vacline::analytic {

/// sin(u)/u, with a Taylor branch near the removable singularity.
template <std::floating_point Real>
Real sinc(Real u) {
    using std::abs;
    using std::sin;
    if (abs(u) < Real(1e-4)) {
        const Real u2 = u * u;
        return Real(1) - u2 / Real(6) + u2 * u2 / Real(120);
    }
    return sin(u) / u;
}

/// Field value and first derivatives of the incident Gaussian
/// psi_c = A exp(-(x - t)^2 / (2 sigma^2)).
template <std::floating_point Real>
struct PulseSample {
    Real psi;
    Real psi_t;
    Real psi_x;
};

template <std::floating_point Real>
PulseSample<Real> pulse_sample(Real t, Real x, Real amplitude, Real sigma) {
    using std::exp;
    const Real u = x - t;
    const Real psi = amplitude * exp(-u * u / (Real(2) * sigma * sigma));
    const Real slope = -u / (sigma * sigma) * psi;
    return {psi, -slope, slope};
}

double classical_pulse(double t, double x, const GaussianPulseSpec& pulse);

struct EnergyMomentum {
    double H;
    double P;
};

/// Energy and momentum of the incident pulse; both equal E0.
EnergyMomentum pulse_energy_momentum(const GaussianPulseSpec& pulse);

/// Source term of the driven field equation with the mode operator replaced
/// by the c-number `a`. The result is real; the imaginary part is returned
/// so callers can verify that.
std::complex<double> source_term(double t, const ExternalModeSpec& mode, const CircuitSpec& circuit,
                                 std::complex<double> a);

/// Amplitude multiplying a * exp(-i omega (t - x)) in the field radiated
/// downstream of the source segment (x > ell / 2).
struct TransmittedCoefficient {
    std::complex<double> g_amp;
};

TransmittedCoefficient transmitted_coefficient(const ExternalModeSpec& mode, const CircuitSpec& circuit);

/// Dimensionless coupling prefactor. `hbar` is 1 in natural units.
double alpha(const ExternalModeSpec& mode, const CircuitSpec& circuit, double hbar = 1.0);

/// Closed-form vacuum variance of the mixed energy (equivalently momentum)
/// term: hbar w E0 alpha (w sigma / c)^3 exp(-(w sigma / c)^2).
double mixed_variance(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                      const CircuitSpec& circuit, double hbar = 1.0);

/// Pulse length at which mixed_variance peaks: sqrt(3/2) c / omega_e.
double peak_sigma(const ExternalModeSpec& mode, const CircuitSpec& circuit);

/// Peak value of mixed_variance in units of hbar w E0 alpha,
/// (3/2)^{3/2} e^{-3/2}.
double peak_shape();

}  // namespace vacline::analytic
