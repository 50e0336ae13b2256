#include "vacline/transmission.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace vacline::lattice {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kReflectionMargin = 5.0;

}  // namespace

TransmissionPlan plan_transmission(const CircuitSpec& circuit, const ExternalModeSpec& mode,
                                   std::complex<double> a0, const TransmissionOptions& opt) {
    const double w = mode.omega_e();
    const double ell = mode.ell();
    const double period = kTwoPi / w;
    if (!(opt.courant > 0.0) || opt.courant > kMaxCourant) {
        std::ostringstream msg;
        msg << "Courant number " << opt.courant << " outside (0, " << kMaxCourant << "]";
        throw ConfigError(msg.str());
    }
    if (opt.window_periods < 1) throw ConfigError("measurement window needs at least one period");

    // whole number of steps per period makes the projection exact for the harmonic
    const int m = static_cast<int>(std::ceil(period / (opt.courant * opt.dx)));
    const double dt = period / m;
    const double ramp = opt.ramp > 0.0 ? opt.ramp : 20.0 / w;

    const Sponge sponge = opt.sponge.value_or(sponge_for(w));

    // put x = ell/2 on a node; -ell/2 is then a node too whenever ell/dx is an integer,
    // so the segment is sampled the same way on every rung of a halving ladder
    const double edge_cells = 0.5 * ell / opt.dx;
    const double shift = (edge_cells - std::floor(edge_cells)) * opt.dx;
    const double station_x =
        shift + std::ceil((0.5 * ell + opt.station_offset - shift) / opt.dx - 1e-9) * opt.dx;
    const double ready = ramp + station_x + 0.5 * ell + opt.settle;
    const long begin = static_cast<long>(std::ceil(ready / dt));
    const long steps = static_cast<long>(opt.window_periods) * m;
    const double t_end = (begin + steps) * dt;

    const double right = 0.5 * (t_end + 0.5 * ell + station_x) + kReflectionMargin;
    const double left = 0.5 * (t_end + 0.5 * ell - station_x) + kReflectionMargin;
    const int origin = static_cast<int>(std::ceil((left + sponge.width) / opt.dx));
    const int cells = origin + static_cast<int>(std::ceil((right + sponge.width) / opt.dx)) + 1;

    LatticeSpec spec(circuit, cells, opt.dx, Boundary::sponge, sponge, origin, shift);
    DriveSpec drive(mode, a0, 0.0, ramp);
    return TransmissionPlan{spec, drive, dt, spec.index_of(station_x), m, begin, steps};
}

TransmissionResult run_transmission_experiment(const TransmissionPlan& plan) {
    const auto& spec = plan.lattice;
    const auto& mode = plan.drive.mode();
    if (spec.boundary() != Boundary::sponge) {
        throw ConfigError("transmission runs need absorbing sponge boundaries");
    }
    const double station_x = spec.x(plan.station);
    const double ell = mode.ell();
    if (!(station_x > 0.5 * ell)) throw ConfigError("station must lie downstream of the source segment");
    const double ready = plan.drive.t_start() + plan.drive.ramp() + station_x + 0.5 * ell;
    if (plan.window_begin * plan.dt < ready) {
        std::ostringstream msg;
        msg << "measurement window opens at t = " << plan.window_begin * plan.dt
            << " before the steady state at t = " << ready;
        throw ConfigError(msg.str());
    }
    if (plan.window_steps <= 0 || plan.window_steps % plan.steps_per_period != 0) {
        throw ConfigError("measurement window must span a whole number of periods");
    }

    const double w = mode.omega_e();
    Solver solver(spec, plan.dt, plan.drive);
    LatticeState state = zero_state(spec);
    solver.advance(state, plan.window_begin);

    std::vector<double> samples;
    std::vector<double> times;
    samples.reserve(static_cast<std::size_t>(plan.window_steps));
    times.reserve(static_cast<std::size_t>(plan.window_steps));
    std::complex<double> proj{};
    double sum = 0.0;
    for (long k = 0; k < plan.window_steps; ++k) {
        // times from the step count, not the accumulated clock
        const double t = (plan.window_begin + k) * plan.dt;
        const double u = field_value(spec, state, plan.station);
        samples.push_back(u);
        times.push_back(t);
        proj += u * std::polar(1.0, w * t);
        sum += u;
        solver.step(state);
    }
    const double K = static_cast<double>(plan.window_steps);
    const std::complex<double> U = proj / K;
    const double offset = sum / K;

    double sq = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double model = 2.0 * std::real(U * std::polar(1.0, -w * times[k])) + offset;
        const double r = samples[k] - model;
        sq += r * r;
    }
    const double residual = std::sqrt(sq / K);
    const double drive_scale =
        std::sqrt(spec.gamma_C()) * std::abs(mode.phi() * plan.drive.a0()) * 0.5 * ell;
    const double scale = std::max(2.0 * std::abs(U), drive_scale);
    if (residual > 1e-3 * scale) {
        std::ostringstream msg;
        msg << "harmonic fit residual " << residual << " exceeds 1e-3 of amplitude scale " << scale;
        throw FitError(msg.str(), residual);
    }
    return {U * std::polar(1.0, -w * station_x), offset, residual, station_x};
}

double measure_sponge_reflection(const CircuitSpec& circuit, double omega, double dx, const Sponge& sponge,
                                 double courant) {
    const double wavelength = kTwoPi / omega;
    const double env = 3.0 * wavelength;
    const double half = 16.0 * env;
    const int layer = static_cast<int>(std::ceil(sponge.width / dx));
    const int inner = static_cast<int>(std::ceil(half / dx));
    const int cells = 2 * (inner + layer) + 1;
    LatticeSpec spec(circuit, cells, dx, Boundary::sponge, sponge, inner + layer);

    LatticeState s = zero_state(spec);
    const double scale = std::sqrt(spec.gamma_C());
    for (int n = 0; n < cells; ++n) {
        const double u = spec.x(n);
        const double e = std::exp(-u * u / (2.0 * env * env));
        const double psi = e * std::cos(omega * u);
        const double dpsi = e * (-u / (env * env) * std::cos(omega * u) - omega * std::sin(omega * u));
        s.psi[static_cast<std::size_t>(n)] = scale * psi;
        s.psidot[static_cast<std::size_t>(n)] = -scale * dpsi;
    }

    auto interior_energy = [&](const LatticeState& st) {
        double kin = 0.0;
        double pot = 0.0;
        for (int n = layer; n < cells - layer; ++n) {
            const auto i = static_cast<std::size_t>(n);
            kin += st.psidot[i] * st.psidot[i];
            const double d = st.psi[i + 1] - st.psi[i];
            pot += d * d;
        }
        return 0.5 * spec.L0() * kin + pot / (2.0 * spec.C0());
    };

    const double e0 = interior_energy(s);
    const double dt = courant * dx;
    Solver solver(spec, dt);
    const long open = static_cast<long>(std::ceil((half + 8.0 * env) / dt));
    const long close = static_cast<long>(std::floor((3.0 * half - 8.0 * env) / dt));
    solver.advance(s, open);
    double worst = 0.0;
    const long stride = std::max<long>(1, static_cast<long>(0.25 * wavelength / dt));
    for (long k = open; k < close; k += stride) {
        worst = std::max(worst, interior_energy(s));
        solver.advance(s, stride);
    }
    return std::sqrt(worst / e0);
}

}  // namespace vacline::lattice
