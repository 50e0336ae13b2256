#pragma once

#include <cmath>
#include <complex>
#include <concepts>

#include "vacline/model.hpp"

// Causal propagator of (d_t^2 - d_x^2) G = -delta(t) delta(x) and the field it
// radiates from the monochromatic source on |x| < ell/2. Everything here is in
// the internal frame c = hbar = 1.
namespace vacline::greens {

/// -1/2 inside the future lightcone, 0 outside, -1/4 on the cone itself.
double retarded_kernel(double dt, double dx);

/// Coefficients of the mode operators in the radiated field:
/// psi_q(t, x) = a_coeff * a + a_dag_coeff * a^dagger.
struct ModeCoefficients {
    std::complex<double> a_coeff;
    std::complex<double> a_dag_coeff;
};

/// The a-coefficient together with its first derivatives.
template <std::floating_point Real>
struct ProfileSample {
    std::complex<Real> g;
    std::complex<Real> g_t;
    std::complex<Real> g_x;
};

/// Spatial profile S(x) = int_{-l/2}^{l/2} exp(i w |x - x'|) dx' and S'(x),
/// evaluated in closed form for every x.
template <std::floating_point Real>
std::pair<std::complex<Real>, std::complex<Real>> source_profile(Real x, Real omega, Real ell) {
    using C = std::complex<Real>;
    const C i(0, 1);
    const Real half = ell / Real(2);
    if (x >= half || x <= -half) {
        const Real r = std::abs(x);
        // (2 / w) sin(w l / 2) exp(i w |x|), with the sinc written out for small w l
        const Real wh = omega * half;
        const Real sinc = std::abs(wh) < Real(1e-4) ? Real(1) - wh * wh / Real(6)
                                                    : std::sin(wh) / wh;
        const C s = Real(2) * half * sinc * std::exp(i * omega * r);
        const Real sign = x > 0 ? Real(1) : Real(-1);
        return {s, i * omega * sign * s};
    }
    const C left = std::exp(i * omega * (x + half));
    const C right = std::exp(i * omega * (half - x));
    return {(left + right - Real(2)) / (i * omega), left - right};
}

/// a-coefficient of psi_q and its derivatives at (t, x), for the source
/// switched on adiabatically in the remote past.
template <std::floating_point Real>
ProfileSample<Real> psi_q_profile(Real t, Real x, Real omega, Real ell, std::complex<Real> amp) {
    using C = std::complex<Real>;
    const C i(0, 1);
    auto [s, ds] = source_profile(x, omega, ell);
    // time integral of the kernel against exp(-i w t') gives -(1/2) exp(-i w (t - |x - x'|)) / (-i w),
    // which cancels the -i w of the source prefactor
    const C phase = std::exp(-i * omega * t);
    const C g = Real(-0.5) * amp * phase * s;
    return {g, -i * omega * g, Real(-0.5) * amp * phase * ds};
}

/// psi_q coefficients at (t, x), inside or outside the source segment.
ModeCoefficients psi_q_frequency_domain(double t, double x, const ExternalModeSpec& mode,
                                        const CircuitSpec& circuit);

/// a-coefficient and derivatives with the circuit/mode prefactor sqrt(gamma_C) phi applied.
ProfileSample<double> psi_q_sample(double t, double x, const ExternalModeSpec& mode,
                                   const CircuitSpec& circuit);

/// Throws ValidationError unless the circuit is expressed with c = 1.
void require_natural_frame(const CircuitSpec& circuit);

}  // namespace vacline::greens
