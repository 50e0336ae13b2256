#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>

#include "vacline/model.hpp"
#include "vacline/quadrature.hpp"

// Energy, momentum and continuity integrals evaluated by quadrature. All
// inputs are in the internal frame (c = hbar = 1).
namespace vacline::functionals {

struct FieldSample {
    double psi;
    double psi_t;
    double psi_x;
};

struct Window {
    double x_min;
    double x_max;
};

/// Field evaluator plus the spatial window, at each time, outside of which
/// the field is negligible.
struct FieldSampler {
    std::function<FieldSample(double t, double x)> eval;
    std::function<Window(double t)> support;
};

/// Source f(t, x) of the driven field equation.
using Source = std::function<double(double t, double x)>;

/// Gaussian pulse moving right (direction = +1) or left (direction = -1).
/// The support window spans 10 sigma either side of the centre.
FieldSampler gaussian_sampler(const GaussianPulseSpec& pulse, int direction = +1);

FieldSampler zero_sampler();

/// 1/2 int [psi_t^2 + psi_x^2] dx over the support window.
double energy(const FieldSampler& field, double t, const quad::Tolerance& tol = quad::default_tolerance());

/// -int psi_t psi_x dx over the support window.
double momentum(const FieldSampler& field, double t, const quad::Tolerance& tol = quad::default_tolerance());

/// Amplitudes of the mixed observables, H_m = mu_H a + conj(mu_H) a^dagger and
/// likewise for P_m.
struct OverlapAmplitude {
    std::complex<double> mu_H;
    std::complex<double> mu_P;
};

/// Raised when the pulse still overlaps the source segment at the requested time.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& what, double min_time)
        : std::invalid_argument(what), min_time_(min_time) {}
    double min_time() const noexcept { return min_time_; }

private:
    double min_time_;
};

/// Earliest admissible evaluation time, ell/2 + 8 sigma.
double min_evaluation_time(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode);

/// Evaluation time used when none is given: ell/2 + 12 sigma, which keeps the
/// whole integration window downstream of the source segment.
double default_evaluation_time(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode);

/// Overlap integrals of the classical pulse with the radiated mode profile over
/// [t - 10 sigma, t + 10 sigma], evaluated in extended precision because the
/// result can be many orders of magnitude below the integrand.
OverlapAmplitude mixed_overlap_amplitude(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                                         const CircuitSpec& circuit, double t,
                                         double rel_tol = quad::default_rel_tolerance());

OverlapAmplitude mixed_overlap_amplitude(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                                         const CircuitSpec& circuit);

/// Canonical tensor T^mu_nu of the Lagrangian density 1/2 psi_t^2 - 1/2 psi_x^2 - psi f,
/// indexed [mu][nu].
std::array<std::array<double, 2>, 2> stress_tensor(const FieldSample& s, double f);

/// d_mu T^mu_nu - psi d_nu f at (t, x) by central differences of step h.
std::array<double, 2> continuity_residual(const FieldSampler& field, const Source& source, double t,
                                          double x, double h = 1e-3);

}  // namespace vacline::functionals
