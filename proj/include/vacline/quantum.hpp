#pragma once

#include <complex>

#include "vacline/functionals.hpp"
#include "vacline/model.hpp"

// Moments of observables linear in a single bosonic mode, [a, a^dagger] = 1.
namespace vacline::quantum {

/// c0 + mu a + conj(mu) a^dagger. Hermitian by construction.
struct LinearObservable {
    double c0 = 0.0;
    std::complex<double> mu{};

    LinearObservable operator+(const LinearObservable& o) const { return {c0 + o.c0, mu + o.mu}; }
};

/// Vacuum or coherent state of the mode; the vacuum is coherent(0).
class ModeState {
public:
    static ModeState vacuum() { return ModeState({}); }
    static ModeState coherent(std::complex<double> a0) { return ModeState(a0); }

    std::complex<double> displacement() const noexcept { return a0_; }
    bool is_vacuum() const noexcept { return a0_ == std::complex<double>{}; }

private:
    explicit ModeState(std::complex<double> a0) : a0_(a0) {}
    std::complex<double> a0_;
};

double mean(const LinearObservable& obs, const ModeState& state);

/// |mu|^2 for every coherent state, the vacuum included.
double variance(const LinearObservable& obs, const ModeState& state);

struct VarianceShift {
    double energy;    ///< <H_m^2>
    double momentum;  ///< <P_m^2>
};

/// Shift of the energy and momentum variances caused by the classical pulse,
/// from the quadrature overlap amplitudes (internal frame).
VarianceShift variance_shift(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                             const CircuitSpec& circuit);

VarianceShift variance_shift(const functionals::OverlapAmplitude& overlap);

}  // namespace vacline::quantum
