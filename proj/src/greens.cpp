#include "vacline/greens.hpp"

#include <cmath>

namespace vacline::greens {

double retarded_kernel(double dt, double dx) {
    const double gap = dt - std::abs(dx);
    if (gap > 0.0) return -0.5;
    if (gap < 0.0) return 0.0;
    return dt > 0.0 ? -0.25 : 0.0;
}

void require_natural_frame(const CircuitSpec& circuit) {
    if (std::abs(circuit.c() - 1.0) > 1e-12) {
        throw ValidationError("gamma_L", "propagator requires c = 1; convert the model with Model::natural()");
    }
}

ProfileSample<double> psi_q_sample(double t, double x, const ExternalModeSpec& mode,
                                   const CircuitSpec& circuit) {
    require_natural_frame(circuit);
    return psi_q_profile<double>(t, x, mode.omega_e(), mode.ell(),
                                 std::sqrt(circuit.gamma_C()) * mode.phi());
}

ModeCoefficients psi_q_frequency_domain(double t, double x, const ExternalModeSpec& mode,
                                        const CircuitSpec& circuit) {
    const auto s = psi_q_sample(t, x, mode, circuit);
    return {s.g, std::conj(s.g)};
}

}  // namespace vacline::greens
