#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vacline/model.hpp"

// Time-domain simulation of the discrete LC ladder. The state holds the cell
// charges psi_n = sqrt(gamma_C) psi(t, x_n); the circuit must be in the
// internal frame (c = 1), so L0 = dx / gamma_C and C0 = dx gamma_C.
namespace vacline::lattice {

enum class Boundary { periodic, clamped, sponge };

/// Absorbing layer: damping rate strength * (d / width)^4 at depth d into
/// the layer, with a clamped cell beyond it. Reflection depends on
/// omega * width and strength / omega; width = 5 wavelengths with
/// strength = 4 omega reflects about 2e-6 in amplitude.
struct Sponge {
    double width = 10.0 * std::numbers::pi;
    double strength = 4.0;
};

/// Sponge sized for waves of angular frequency omega (c = 1).
Sponge sponge_for(double omega);

class LatticeSpec {
public:
    /// x_n = (n - origin) * dx + shift. The default origin centres the grid on x = 0.
    LatticeSpec(const CircuitSpec& circuit, int cells, double dx, Boundary boundary,
                Sponge sponge = {}, std::optional<int> origin = std::nullopt, double shift = 0.0);

    int size() const noexcept { return cells_; }
    double dx() const noexcept { return dx_; }
    double gamma_C() const noexcept { return gamma_C_; }
    double L0() const noexcept { return dx_ / gamma_C_; }
    double C0() const noexcept { return dx_ * gamma_C_; }
    Boundary boundary() const noexcept { return boundary_; }
    const Sponge& sponge() const noexcept { return sponge_; }
    int origin() const noexcept { return origin_; }
    double shift() const noexcept { return shift_; }

    double x(int n) const noexcept { return (n - origin_) * dx_ + shift_; }
    /// Nearest cell index to position x (clamped to the grid).
    int index_of(double x) const noexcept;
    /// Number of cells in each absorbing layer (0 unless boundary is sponge).
    int sponge_cells() const noexcept;
    /// Damping rate per cell.
    std::vector<double> damping_profile() const;

private:
    int cells_;
    double dx_;
    double gamma_C_;
    Boundary boundary_;
    Sponge sponge_;
    int origin_;
    double shift_;
};

struct LatticeState {
    std::vector<double> psi;
    std::vector<double> psidot;
    double t = 0.0;
};

/// Coherent drive of the source segment |x| < ell / 2 with the mode operator
/// replaced by a0, switched on by a smooth ramp that starts at t_start and
/// reaches one exactly at t_start + ramp.
class DriveSpec {
public:
    DriveSpec(const ExternalModeSpec& mode, std::complex<double> a0, double t_start, double ramp);

    const ExternalModeSpec& mode() const noexcept { return mode_; }
    std::complex<double> a0() const noexcept { return a0_; }
    double t_start() const noexcept { return t_start_; }
    double ramp() const noexcept { return ramp_; }

    /// 0 before t_start, 1 after t_start + ramp, C-infinity in between.
    double gate(double t) const noexcept;
    /// Gated source value f(t) inside the segment.
    double source(double t, const CircuitSpec& circuit) const;

private:
    ExternalModeSpec mode_;
    std::complex<double> a0_;
    double t_start_;
    double ramp_;
};

/// Fraction of each cell [x_n - dx/2, x_n + dx/2] lying inside |x| < ell/2.
std::vector<std::pair<int, double>> source_weights(const LatticeSpec& spec, double ell);

/// Gaussian right mover centred at `center`: psi sampled on the grid and
/// psidot = -d_x psi. Throws std::invalid_argument if +-8 sigma leaves the
/// undamped part of the grid.
LatticeState init(const LatticeSpec& spec, const GaussianPulseSpec& pulse, double center);

LatticeState zero_state(const LatticeSpec& spec);

/// Discrete self-energy sum L0/2 psidot^2 + (psi_{n+1} - psi_n)^2 / (2 C0).
double energy(const LatticeSpec& spec, const LatticeState& state);
/// Discrete momentum -(1/2 gamma_C) sum psidot_n (psi_{n+1} - psi_{n-1}).
double momentum(const LatticeSpec& spec, const LatticeState& state);

/// Rate of work done by the drive on the line, -sum psidot_n dPhi_n/dt.
double work_rate(const LatticeSpec& spec, const LatticeState& state, const DriveSpec* drive);
/// Force exerted by the drive, sum dPhi_n/dt (psi_{n+1} - psi_{n-1}) / (2 dx).
double momentum_force(const LatticeSpec& spec, const LatticeState& state, const DriveSpec* drive);

/// Continuum-normalised field psi(t, x_n) = psi_n / sqrt(gamma_C).
inline double field_value(const LatticeSpec& spec, const LatticeState& state, int n) {
    return state.psi[static_cast<std::size_t>(n)] / std::sqrt(spec.gamma_C());
}

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kMaxCourant = 0.9;

/// Velocity-Verlet (kick-drift-kick) integrator of the ladder equations
/// L0 psi_n'' = (psi_{n+1} - 2 psi_n + psi_{n-1}) / C0 - dPhi_n/dt,
/// with the sponge damping applied implicitly in each half kick.
class Solver {
public:
    /// Throws ConfigError when dt / dx exceeds kMaxCourant.
    Solver(const LatticeSpec& spec, double dt, std::optional<DriveSpec> drive = std::nullopt);

    const LatticeSpec& spec() const noexcept { return spec_; }
    double dt() const noexcept { return dt_; }
    const DriveSpec* drive() const noexcept { return drive_ ? &*drive_ : nullptr; }

    void step(LatticeState& state);
    /// Equivalent to `steps` calls of step() with one fewer force evaluation each.
    void advance(LatticeState& state, long steps);

private:
    void acceleration(std::span<const double> psi, double t, std::span<double> out) const;
    void kick_drift_kick(LatticeState& state);

    LatticeSpec spec_;
    double dt_;
    std::optional<DriveSpec> drive_;
    std::vector<std::pair<int, double>> weights_;
    std::vector<double> damping_;
    std::vector<double> accel_;
};

/// Single step from a fresh solver.
void step(LatticeState& state, const LatticeSpec& spec, double dt, const DriveSpec* drive);

struct BalanceAudit {
    double max_energy_residual;    ///< max |dH/dt - work_rate|
    double max_momentum_residual;  ///< max |dP/dt - momentum_force|
    double energy_scale;           ///< max |H| along the trajectory
};

/// Compares central differences of H and P along consecutive snapshots
/// (spacing dt) with the drive's work rate and force. Requires periodic or
/// clamped boundaries.
BalanceAudit energy_balance_audit(const LatticeSpec& spec, std::span<const LatticeState> trajectory,
                                  double dt, const DriveSpec* drive);

/// Writes `t,x,psi,psidot` rows for every `stride`-th cell of each snapshot.
void write_trajectory_csv(std::ostream& out, const LatticeSpec& spec,
                          std::span<const LatticeState> snapshots, int stride = 1);

}  // namespace vacline::lattice
