#include "vacline/analytic.hpp"

#include <cmath>
#include <numbers>

namespace vacline::analytic {

double classical_pulse(double t, double x, const GaussianPulseSpec& pulse) {
    return pulse_sample(t, x, pulse.amplitude(), pulse.sigma()).psi;
}

EnergyMomentum pulse_energy_momentum(const GaussianPulseSpec& pulse) {
    return {pulse.E0(), pulse.E0()};
}

std::complex<double> source_term(double t, const ExternalModeSpec& mode, const CircuitSpec& circuit,
                                 std::complex<double> a) {
    using namespace std::complex_literals;
    const double w = mode.omega_e();
    const std::complex<double> z = mode.phi() * a * std::exp(-1i * w * t);
    return -1i * w * std::sqrt(circuit.gamma_C()) * (z - std::conj(z));
}

TransmittedCoefficient transmitted_coefficient(const ExternalModeSpec& mode, const CircuitSpec& circuit) {
    const double w = mode.omega_e();
    const double half = 0.5 * mode.ell();
    // sin(w l / 2) / w written as (l/2) sinc(w l / 2) so the l -> 0 limit is exact
    return {-std::sqrt(circuit.gamma_C()) * half * sinc(w * half) * mode.phi()};
}

double alpha(const ExternalModeSpec& mode, const CircuitSpec& circuit, double hbar) {
    const double c = circuit.c();
    const double ell = mode.ell();
    const double s = sinc(mode.omega_e() * ell / (2.0 * c));
    return 4.0 * std::sqrt(std::numbers::pi) * s * s * c * ell * ell * circuit.gamma_C() *
           std::norm(mode.phi()) / hbar;
}

double mixed_variance(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                      const CircuitSpec& circuit, double hbar) {
    const double w = mode.omega_e();
    const double ws = w * pulse.sigma() / circuit.c();
    return hbar * w * pulse.E0() * alpha(mode, circuit, hbar) * ws * ws * ws * std::exp(-ws * ws);
}

double peak_sigma(const ExternalModeSpec& mode, const CircuitSpec& circuit) {
    return std::sqrt(1.5) * circuit.c() / mode.omega_e();
}

double peak_shape() {
    return std::pow(1.5, 1.5) * std::exp(-1.5);
}

}  // namespace vacline::analytic
