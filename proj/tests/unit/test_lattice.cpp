#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "vacline/analytic.hpp"
#include "vacline/lattice.hpp"
#include "vacline/transmission.hpp"

using namespace vacline;
using namespace vacline::lattice;

namespace {
const CircuitSpec unit_line(1.0, 1.0);
const ExternalModeSpec unit_mode(1.0, {1.0, 0.0}, 1.0);

double init_energy_error(double dx) {
    const int cells = static_cast<int>(std::lround(80.0 / dx)) + 1;
    const LatticeSpec spec(unit_line, cells, dx, Boundary::periodic);
    return std::abs(energy(spec, init(spec, GaussianPulseSpec(1.0, 1.0), 0.0)) - 1.0);
}

// max deviation from the exactly translated pulse after time T
double translation_error(double dx) {
    const double T = 10.0;
    const int cells = static_cast<int>(std::lround(60.0 / dx));
    const LatticeSpec spec(unit_line, cells, dx, Boundary::periodic);
    const GaussianPulseSpec pulse(1.0, 1.0);
    auto s = init(spec, pulse, -10.0);
    const double dt = 0.5 * dx;
    Solver(spec, dt).advance(s, std::lround(T / dt));
    double err = 0.0;
    for (int n = 0; n < spec.size(); ++n)
        err = std::max(err, std::abs(field_value(spec, s, n) - analytic::classical_pulse(T, spec.x(n) + 10.0, pulse)));
    return err;
}
}  // namespace

TEST_CASE("initial pulse energy") {
    const double coarse = init_energy_error(0.02);
    const double fine = init_energy_error(0.01);
    CHECK(fine < 1e-3);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));

    const LatticeSpec spec(unit_line, 400, 0.1, Boundary::periodic);
    const auto s = init(spec, GaussianPulseSpec(0.0, 1.0), 0.0);
    for (std::size_t n = 0; n < s.psi.size(); ++n) {
        CHECK(s.psi[n] == 0.0);
        CHECK(s.psidot[n] == 0.0);
    }
    CHECK_THROWS_AS(init(spec, GaussianPulseSpec(1.0, 3.0), 0.0), std::invalid_argument);
}

TEST_CASE("discrete dispersion relation") {
    const double dx = 0.1;
    const int cells = 64;
    const LatticeSpec spec(unit_line, cells, dx, Boundary::periodic);
    for (int m : {1, 4, 11}) {
        const double k = 2.0 * std::numbers::pi * m / (cells * dx);
        const double omega_k = (2.0 / dx) * std::abs(std::sin(k * dx / 2));
        auto s = zero_state(spec);
        for (int n = 0; n < cells; ++n) s.psi[static_cast<std::size_t>(n)] = std::cos(k * spec.x(n));
        const int probe = spec.origin();  // x = 0, where psi = cos(omega_k t)
        const double dt = 0.002 / omega_k;
        Solver solver(spec, std::min(dt, 0.5 * dx));
        // time of the 20th zero crossing, (19 + 1/2) pi / omega
        int crossings = 0;
        double prev = s.psi[static_cast<std::size_t>(probe)];
        double t_cross = 0.0;
        while (crossings < 20) {
            const double t0 = s.t;
            solver.step(s);
            const double cur = s.psi[static_cast<std::size_t>(probe)];
            if ((prev > 0) != (cur > 0)) {
                ++crossings;
                t_cross = t0 + (s.t - t0) * prev / (prev - cur);
            }
            prev = cur;
        }
        const double measured = 19.5 * std::numbers::pi / t_cross;
        CHECK(std::abs(measured - omega_k) < 1e-4 * omega_k);
    }
}

TEST_CASE("pulse translation converges at second order") {
    const double coarse = translation_error(0.1);
    const double fine = translation_error(0.05);
    CHECK(fine < 1e-2);
    CHECK(std::log2(coarse / fine) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("zero state stays zero") {
    const LatticeSpec spec(unit_line, 100, 0.1, Boundary::clamped);
    auto s = zero_state(spec);
    Solver(spec, 0.05).advance(s, 10000);
    for (std::size_t n = 0; n < s.psi.size(); ++n) {
        CHECK(s.psi[n] == 0.0);
        CHECK(s.psidot[n] == 0.0);
    }
}

TEST_CASE("free evolution conserves energy and momentum") {
    const LatticeSpec spec(unit_line, 400, 0.1, Boundary::periodic);
    auto s = init(spec, GaussianPulseSpec(1.0, 2.0), 0.0);
    const double H0 = energy(spec, s);
    const double P0 = momentum(spec, s);
    CHECK(H0 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(P0 == doctest::Approx(1.0).epsilon(1e-3));
    Solver solver(spec, 0.05);
    for (int i = 0; i < 100; ++i) {
        solver.advance(s, 1000);
        CHECK(std::abs(energy(spec, s) - H0) < 1e-6 * H0);
        CHECK(std::abs(momentum(spec, s) - P0) < 1e-6 * P0);
    }
}

TEST_CASE("undriven energy audit") {
    const LatticeSpec spec(unit_line, 400, 0.1, Boundary::periodic);
    auto s = init(spec, GaussianPulseSpec(1.0, 2.0), 0.0);
    // the measured energy ripples at O(dt^2) around the conserved value
    const double dt = 0.002;
    Solver solver(spec, dt);
    std::vector<LatticeState> traj{s};
    for (int k = 0; k < 1000; ++k) {
        solver.step(s);
        traj.push_back(s);
    }
    const auto audit = energy_balance_audit(spec, traj, dt, nullptr);
    CHECK(audit.max_energy_residual < 1e-10 * audit.energy_scale);
    CHECK(audit.max_momentum_residual < 1e-10);
}

TEST_CASE("driven energy and momentum audits") {
    const LatticeSpec spec(unit_line, 400, 0.05, Boundary::clamped);
    const DriveSpec drive(unit_mode, {1.0, 0.0}, 0.0, 5.0);
    std::vector<double> residual;
    for (double dt : {0.02, 0.01, 0.005}) {
        Solver solver(spec, dt, drive);
        auto s = zero_state(spec);
        std::vector<LatticeState> traj{s};
        for (long k = 0; k < std::lround(8.0 / dt); ++k) {
            solver.step(s);
            traj.push_back(s);
        }
        const auto audit = energy_balance_audit(spec, traj, dt, &drive);
        residual.push_back(audit.max_energy_residual);
        CHECK(audit.max_momentum_residual < 1e-9);
        CHECK(audit.energy_scale > 0.1);
    }
    CHECK(residual[0] / residual[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(residual[1] / residual[2] == doctest::Approx(4.0).epsilon(0.1));
    CHECK_THROWS_AS(energy_balance_audit(LatticeSpec(unit_line, 400, 0.05, Boundary::sponge, Sponge{2.0, 1.0}),
                                         std::vector<LatticeState>(3, zero_state(spec)), 0.01, &drive),
                    std::invalid_argument);
}

TEST_CASE("drive switch-on respects causality") {
    const double dx = 0.05;
    const LatticeSpec spec(unit_line, 1200, dx, Boundary::clamped);
    const DriveSpec drive(unit_mode, {1.0, 0.0}, 0.0, 5.0);
    Solver solver(spec, 0.5 * dx, drive);
    auto s = zero_state(spec);
    solver.advance(s, 400);  // t = 10
    double outside = 0.0;
    double inside = 0.0;
    for (int n = 0; n < spec.size(); ++n) {
        const double reach = std::abs(spec.x(n)) - unit_mode.ell() / 2 - s.t;
        const double v = std::abs(field_value(spec, s, n));
        if (reach > 3.0) outside = std::max(outside, v);
        if (reach < -3.0) inside = std::max(inside, v);
    }
    CHECK(inside > 0.1);
    CHECK(outside < 1e-10);
}

TEST_CASE("drive gate") {
    const DriveSpec drive(unit_mode, {1.0, 0.0}, 2.0, 6.0);
    CHECK(drive.gate(1.0) == 0.0);
    CHECK(drive.gate(2.0) == 0.0);
    CHECK(drive.gate(8.0) == 1.0);
    CHECK(drive.gate(30.0) == 1.0);
    double prev = 0.0;
    for (int i = 1; i < 60; ++i) {
        const double g = drive.gate(2.0 + 6.0 * i / 60);
        CHECK(g >= prev);
        prev = g;
    }
    CHECK_THROWS(DriveSpec(unit_mode, {1.0, 0.0}, 0.0, 1.0));
}

TEST_CASE("source weights cover the segment") {
    const LatticeSpec spec(unit_line, 200, 0.07, Boundary::clamped);
    double total = 0.0;
    for (auto [n, w] : source_weights(spec, 1.0)) {
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
        total += w * spec.dx();
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Courant limit is enforced before stepping") {
    const LatticeSpec spec(unit_line, 100, 0.1, Boundary::periodic);
    CHECK_THROWS_AS(Solver(spec, 0.095), ConfigError);
    CHECK_NOTHROW(Solver(spec, 0.09));
}

TEST_CASE("lattice requires the internal frame") {
    CHECK_THROWS_AS(LatticeSpec(CircuitSpec(4.0, 1.0), 100, 0.1, Boundary::periodic), ValidationError);
    CHECK_THROWS_AS(LatticeSpec(unit_line, 8, 0.1, Boundary::periodic), ValidationError);
    CHECK_THROWS_AS(LatticeSpec(unit_line, 100, 0.0, Boundary::periodic), ValidationError);
}

TEST_CASE("trajectory export") {
    const LatticeSpec spec(unit_line, 20, 0.5, Boundary::periodic);
    std::vector<LatticeState> snaps{zero_state(spec), zero_state(spec)};
    snaps[1].t = 0.25;
    snaps[1].psi[3] = 1.5;
    std::ostringstream out;
    write_trajectory_csv(out, spec, snaps, 2);
    const std::string text = out.str();
    CHECK(text.rfind("t,x,psi,psidot\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 10);
}

TEST_CASE("sponge reflection") {
    CHECK(measure_sponge_reflection(unit_line, 1.0, 0.1, sponge_for(1.0)) < 1e-4);
    CHECK(measure_sponge_reflection(unit_line, 2.0, 0.1, sponge_for(2.0)) < 1e-4);
}

TEST_CASE("transmitted amplitude at dx = 0.01") {
    const std::complex<double> a0(1.0, 0.0);
    TransmissionOptions opts;
    opts.dx = 0.01;
    const auto result = run_transmission_experiment(plan_transmission(unit_line, unit_mode, a0, opts));
    const auto expected = analytic::transmitted_coefficient(unit_mode, unit_line).g_amp * a0;
    CHECK(std::abs(result.amplitude) == doctest::Approx(0.4794).epsilon(0.005));
    CHECK(std::abs(result.amplitude - expected) < 5e-3 * std::abs(expected));
}

TEST_CASE("complex drive amplitude rotates the transmitted wave") {
    const std::complex<double> a0(0.3, -0.8);
    const ExternalModeSpec mode(1.5, {0.5, 0.5}, 0.8);
    TransmissionOptions opts;
    opts.dx = 0.02;
    const auto result = run_transmission_experiment(plan_transmission(unit_line, mode, a0, opts));
    const auto expected = analytic::transmitted_coefficient(mode, unit_line).g_amp * a0;
    CHECK(std::abs(result.amplitude - expected) < 5e-3 * std::abs(expected));
}

TEST_CASE("no drive, no transmitted wave") {
    TransmissionOptions opts;
    opts.dx = 0.04;
    const auto result = run_transmission_experiment(plan_transmission(unit_line, unit_mode, 0.0, opts));
    CHECK(std::abs(result.amplitude) == 0.0);
}

TEST_CASE("transparency at the sinc zero") {
    const ExternalModeSpec mode(1.0, {1.0, 0.0}, 2.0 * std::numbers::pi);
    TransmissionOptions opts;
    opts.dx = 0.02;
    const auto result = run_transmission_experiment(plan_transmission(unit_line, mode, 1.0, opts));
    CHECK(std::abs(result.amplitude) < 1e-3);
}

TEST_CASE("transmission plan validation") {
    auto plan = plan_transmission(unit_line, unit_mode, 1.0, {});
    CHECK(plan.window_steps % plan.steps_per_period == 0);
    CHECK(plan.lattice.boundary() == Boundary::sponge);
    TransmissionOptions bad;
    bad.courant = 0.95;
    CHECK_THROWS_AS(plan_transmission(unit_line, unit_mode, 1.0, bad), ConfigError);
}
