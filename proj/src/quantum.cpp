#include "vacline/quantum.hpp"

namespace vacline::quantum {

double mean(const LinearObservable& obs, const ModeState& state) {
    return obs.c0 + 2.0 * std::real(obs.mu * state.displacement());
}

double variance(const LinearObservable& obs, const ModeState&) {
    // displacing a by a0 shifts the observable by a c-number only
    return std::norm(obs.mu);
}

VarianceShift variance_shift(const functionals::OverlapAmplitude& overlap) {
    const auto vac = ModeState::vacuum();
    return {variance(LinearObservable{0.0, overlap.mu_H}, vac),
            variance(LinearObservable{0.0, overlap.mu_P}, vac)};
}

VarianceShift variance_shift(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                             const CircuitSpec& circuit) {
    return variance_shift(functionals::mixed_overlap_amplitude(pulse, mode, circuit));
}

}  // namespace vacline::quantum
