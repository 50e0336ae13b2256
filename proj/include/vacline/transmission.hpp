#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

#include "vacline/lattice.hpp"

// Coherent-drive transmission runs on the ladder: the line is driven on the
// source segment, and the steady harmonic at a downstream station is projected
// out over whole periods. The domain is sized so that nothing reflected by the
// absorbing layers can reach the station before the measurement window closes.
namespace vacline::lattice {

struct TransmissionOptions {
    double dx = 0.01;
    double courant = 0.5;
    double ramp = 0.0;          ///< drive ramp duration; 0 selects 20 / omega_e
    int window_periods = 8;
    double station_offset = 1.0;  ///< station sits this far downstream of ell / 2
    double settle = 5.0;        ///< extra wait after the ramp front passes the station
    std::optional<Sponge> sponge;  ///< defaults to sponge_for(omega_e)
};

struct TransmissionPlan {
    LatticeSpec lattice;
    DriveSpec drive;
    double dt;
    int station;
    int steps_per_period;
    long window_begin;  ///< first sampled step
    long window_steps;  ///< whole number of periods
};

TransmissionPlan plan_transmission(const CircuitSpec& circuit, const ExternalModeSpec& mode,
                                   std::complex<double> a0, const TransmissionOptions& options = {});

struct TransmissionResult {
    std::complex<double> amplitude;  ///< A in A exp(-i w (t - x)) + c.c.
    double offset;                   ///< constant left behind by the switch-on
    double fit_residual;             ///< rms misfit over the window
    double station_x;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Runs the plan and fits the downstream field. Throws ConfigError if the
/// plan lacks absorbing layers or samples before the steady state, and
/// FitError if the misfit exceeds 1e-3 of the expected amplitude scale.
TransmissionResult run_transmission_experiment(const TransmissionPlan& plan);

/// Amplitude reflection coefficient of the sponge layer at frequency omega,
/// from a narrow-band packet sent into it: sqrt of the largest fraction of the
/// packet energy found back in the undamped region.
double measure_sponge_reflection(const CircuitSpec& circuit, double omega, double dx, const Sponge& sponge,
                                 double courant = 0.5);

}  // namespace vacline::lattice
