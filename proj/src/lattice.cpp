#include "vacline/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vacline/analytic.hpp"
#include "vacline/greens.hpp"

namespace vacline::lattice {

LatticeSpec::LatticeSpec(const CircuitSpec& circuit, int cells, double dx, Boundary boundary, Sponge sponge,
                         std::optional<int> origin, double shift)
    : cells_(cells), dx_(dx), gamma_C_(circuit.gamma_C()), boundary_(boundary), sponge_(sponge),
      origin_(origin.value_or(cells / 2)), shift_(shift) {
    greens::require_natural_frame(circuit);
    if (cells < 16) throw ValidationError("N", "lattice needs at least 16 cells");
    if (!(dx > 0.0) || !std::isfinite(dx)) throw ValidationError("dx", "dx must be positive");
    if (!std::isfinite(shift)) throw ValidationError("shift", "grid shift must be finite");
    if (boundary == Boundary::sponge) {
        if (!(sponge.width > 0.0) || !(sponge.strength > 0.0)) {
            throw ValidationError("sponge", "sponge width and strength must be positive");
        }
        if (2 * sponge_cells() >= cells) throw ValidationError("sponge", "sponge layers cover the whole grid");
    }
}

int LatticeSpec::index_of(double x) const noexcept {
    const long n = std::lround((x - shift_) / dx_) + origin_;
    return static_cast<int>(std::clamp<long>(n, 0, cells_ - 1));
}

int LatticeSpec::sponge_cells() const noexcept {
    if (boundary_ != Boundary::sponge) return 0;
    return static_cast<int>(std::ceil(sponge_.width / dx_));
}

std::vector<double> LatticeSpec::damping_profile() const {
    std::vector<double> eta(static_cast<std::size_t>(cells_), 0.0);
    const int layer = sponge_cells();
    for (int k = 0; k < layer; ++k) {
        // depth from the inner edge of the layer, in units of the width
        const double d = (layer - k) * dx_ / sponge_.width;
        const double rate = sponge_.strength * (d * d) * (d * d);
        eta[static_cast<std::size_t>(k)] = rate;
        eta[static_cast<std::size_t>(cells_ - 1 - k)] = rate;
    }
    return eta;
}

Sponge sponge_for(double omega) {
    return Sponge{5.0 * 2.0 * std::numbers::pi / omega, 4.0 * omega};
}

DriveSpec::DriveSpec(const ExternalModeSpec& mode, std::complex<double> a0, double t_start, double ramp)
    : mode_(mode), a0_(a0), t_start_(t_start), ramp_(ramp) {
    if (!std::isfinite(a0.real()) || !std::isfinite(a0.imag())) throw ValidationError("a0", "a0 must be finite");
    if (!std::isfinite(t_start)) throw ValidationError("t_start", "t_start must be finite");
    if (!(ramp >= 5.0 / mode.omega_e()) || !std::isfinite(ramp)) {
        throw ValidationError("ramp", "ramp time must be at least 5 / omega_e");
    }
}

double DriveSpec::gate(double t) const noexcept {
    const double s = (t - t_start_) / ramp_;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return 0.5 * (1.0 + std::tanh((s - 0.5) / (s * (1.0 - s))));
}

double DriveSpec::source(double t, const CircuitSpec& circuit) const {
    const double g = gate(t);
    if (g == 0.0) return 0.0;
    return g * analytic::source_term(t, mode_, circuit, a0_).real();
}

std::vector<std::pair<int, double>> source_weights(const LatticeSpec& spec, double ell) {
    std::vector<std::pair<int, double>> out;
    const double half = 0.5 * ell;
    const double dx = spec.dx();
    for (int n = 0; n < spec.size(); ++n) {
        const double lo = std::max(spec.x(n) - 0.5 * dx, -half);
        const double hi = std::min(spec.x(n) + 0.5 * dx, half);
        if (hi > lo) out.emplace_back(n, std::min(1.0, (hi - lo) / dx));
    }
    return out;
}

LatticeState zero_state(const LatticeSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.size());
    return LatticeState{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
}

LatticeState init(const LatticeSpec& spec, const GaussianPulseSpec& pulse, double center) {
    const int layer = spec.sponge_cells();
    const double lo = spec.x(layer);
    const double hi = spec.x(spec.size() - 1 - layer);
    const double reach = 8.0 * pulse.sigma();
    if (center - reach < lo || center + reach > hi) {
        std::ostringstream msg;
        msg << "pulse support [" << center - reach << ", " << center + reach << "] exceeds the grid interior ["
            << lo << ", " << hi << "]";
        throw std::invalid_argument(msg.str());
    }
    LatticeState s = zero_state(spec);
    const double scale = std::sqrt(spec.gamma_C());
    const double amp = pulse.amplitude();
    for (int n = 0; n < spec.size(); ++n) {
        const auto p = analytic::pulse_sample(0.0, spec.x(n) - center, amp, pulse.sigma());
        s.psi[static_cast<std::size_t>(n)] = scale * p.psi;
        s.psidot[static_cast<std::size_t>(n)] = -scale * p.psi_x;
    }
    return s;
}

namespace {

// psi_{n+k} honouring the boundary: wrap for periodic, zero ghost otherwise
inline double neighbour(const LatticeSpec& spec, std::span<const double> psi, int n) {
    const int N = spec.size();
    if (n >= 0 && n < N) return psi[static_cast<std::size_t>(n)];
    if (spec.boundary() == Boundary::periodic) return psi[static_cast<std::size_t>((n + N) % N)];
    return 0.0;
}

double flux_rate(const LatticeSpec& spec, double weight, double f) {
    return spec.dx() * weight * f / std::sqrt(spec.gamma_C());
}

}  // namespace

double energy(const LatticeSpec& spec, const LatticeState& state) {
    const int N = spec.size();
    const std::span<const double> psi(state.psi);
    double kinetic = 0.0;
    for (double v : state.psidot) kinetic += v * v;
    double potential = 0.0;
    const int first = spec.boundary() == Boundary::periodic ? 0 : -1;
    for (int n = first; n < N; ++n) {
        const double d = neighbour(spec, psi, n + 1) - neighbour(spec, psi, n);
        potential += d * d;
    }
    return 0.5 * spec.L0() * kinetic + potential / (2.0 * spec.C0());
}

double momentum(const LatticeSpec& spec, const LatticeState& state) {
    const std::span<const double> psi(state.psi);
    double sum = 0.0;
    for (int n = 0; n < spec.size(); ++n) {
        sum += state.psidot[static_cast<std::size_t>(n)] * (neighbour(spec, psi, n + 1) - neighbour(spec, psi, n - 1));
    }
    return -sum / (2.0 * spec.gamma_C());
}

double work_rate(const LatticeSpec& spec, const LatticeState& state, const DriveSpec* drive) {
    if (!drive) return 0.0;
    const double f = drive->source(state.t, CircuitSpec(1.0 / spec.gamma_C(), spec.gamma_C()));
    double sum = 0.0;
    for (auto [n, w] : source_weights(spec, drive->mode().ell())) {
        sum += state.psidot[static_cast<std::size_t>(n)] * flux_rate(spec, w, f);
    }
    return -sum;
}

double momentum_force(const LatticeSpec& spec, const LatticeState& state, const DriveSpec* drive) {
    if (!drive) return 0.0;
    const std::span<const double> psi(state.psi);
    const double f = drive->source(state.t, CircuitSpec(1.0 / spec.gamma_C(), spec.gamma_C()));
    double sum = 0.0;
    for (auto [n, w] : source_weights(spec, drive->mode().ell())) {
        sum += flux_rate(spec, w, f) * (neighbour(spec, psi, n + 1) - neighbour(spec, psi, n - 1));
    }
    return sum / (2.0 * spec.dx());
}

Solver::Solver(const LatticeSpec& spec, double dt, std::optional<DriveSpec> drive)
    : spec_(spec), dt_(dt), drive_(std::move(drive)), damping_(spec.damping_profile()),
      accel_(static_cast<std::size_t>(spec.size()), 0.0) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
    const double courant = dt / spec.dx();
    if (courant > kMaxCourant) {
        std::ostringstream msg;
        msg << "Courant number c dt / dx = " << courant << " exceeds " << kMaxCourant;
        throw ConfigError(msg.str());
    }
    if (drive_) weights_ = source_weights(spec_, drive_->mode().ell());
}

void Solver::acceleration(std::span<const double> psi, double t, std::span<double> out) const {
    const int N = spec_.size();
    const double k = 1.0 / (spec_.L0() * spec_.C0());
    const bool periodic = spec_.boundary() == Boundary::periodic;
    for (int n = 1; n < N - 1; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out[i] = k * (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]);
    }
    const double left_ghost = periodic ? psi[static_cast<std::size_t>(N - 1)] : 0.0;
    const double right_ghost = periodic ? psi[0] : 0.0;
    out[0] = k * (psi[1] - 2.0 * psi[0] + left_ghost);
    const auto last = static_cast<std::size_t>(N - 1);
    out[last] = k * (right_ghost - 2.0 * psi[last] + psi[last - 1]);

    if (drive_) {
        const double f = drive_->source(t, CircuitSpec(1.0 / spec_.gamma_C(), spec_.gamma_C()));
        if (f != 0.0) {
            const double inv_L0 = 1.0 / spec_.L0();
            for (auto [n, w] : weights_) out[static_cast<std::size_t>(n)] -= inv_L0 * flux_rate(spec_, w, f);
        }
    }
}

void Solver::kick_drift_kick(LatticeState& state) {
    const std::size_t N = state.psi.size();
    const double h = dt_;
    const double half = 0.5 * h;
    auto& v = state.psidot;
    auto& q = state.psi;
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = (v[i] + half * accel_[i]) / (1.0 + half * damping_[i]);
        q[i] += h * v[i];
    }
    state.t += h;
    acceleration(q, state.t, accel_);
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = (v[i] + half * accel_[i]) / (1.0 + half * damping_[i]);
    }
}

void Solver::step(LatticeState& state) {
    acceleration(state.psi, state.t, accel_);
    kick_drift_kick(state);
}

void Solver::advance(LatticeState& state, long steps) {
    if (steps <= 0) return;
    // the closing acceleration of one step opens the next
    acceleration(state.psi, state.t, accel_);
    for (long k = 0; k < steps; ++k) kick_drift_kick(state);
}

void step(LatticeState& state, const LatticeSpec& spec, double dt, const DriveSpec* drive) {
    Solver solver(spec, dt, drive ? std::optional<DriveSpec>(*drive) : std::nullopt);
    solver.step(state);
}

BalanceAudit energy_balance_audit(const LatticeSpec& spec, std::span<const LatticeState> trajectory,
                                  double dt, const DriveSpec* drive) {
    if (spec.boundary() == Boundary::sponge) {
        throw std::invalid_argument("energy audit needs periodic or clamped boundaries");
    }
    BalanceAudit audit{0.0, 0.0, 0.0};
    const std::size_t K = trajectory.size();
    std::vector<double> H(K), P(K);
    for (std::size_t k = 0; k < K; ++k) {
        H[k] = energy(spec, trajectory[k]);
        P[k] = momentum(spec, trajectory[k]);
        audit.energy_scale = std::max(audit.energy_scale, std::abs(H[k]));
    }
    for (std::size_t k = 1; k + 1 < K; ++k) {
        const double dH = (H[k + 1] - H[k - 1]) / (2.0 * dt);
        const double dP = (P[k + 1] - P[k - 1]) / (2.0 * dt);
        audit.max_energy_residual =
            std::max(audit.max_energy_residual, std::abs(dH - work_rate(spec, trajectory[k], drive)));
        audit.max_momentum_residual =
            std::max(audit.max_momentum_residual, std::abs(dP - momentum_force(spec, trajectory[k], drive)));
    }
    return audit;
}

void write_trajectory_csv(std::ostream& out, const LatticeSpec& spec, std::span<const LatticeState> snapshots,
                          int stride) {
    stride = std::max(stride, 1);
    out << "t,x,psi,psidot\n";
    const auto old = out.precision(12);
    for (const auto& s : snapshots) {
        for (int n = 0; n < spec.size(); n += stride) {
            const auto i = static_cast<std::size_t>(n);
            out << s.t << ',' << spec.x(n) << ',' << s.psi[i] << ',' << s.psidot[i] << '\n';
        }
    }
    out.precision(old);
}

}  // namespace vacline::lattice
