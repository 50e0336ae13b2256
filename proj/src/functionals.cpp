#include "vacline/functionals.hpp"

#include <cmath>
#include <sstream>

#include "vacline/analytic.hpp"
#include "vacline/greens.hpp"

namespace vacline::functionals {

namespace {

constexpr double kWindowSigmas = 10.0;

template <class Integrand>
double integrate_over_support(const FieldSampler& field, double t, const quad::Tolerance& tol,
                              Integrand&& integrand) {
    const Window w = field.support(t);
    if (!std::isfinite(w.x_min) || !std::isfinite(w.x_max)) {
        throw std::invalid_argument("field support window must be finite");
    }
    if (!(w.x_max > w.x_min)) return 0.0;
    auto f = [&](double x) { return integrand(field.eval(t, x)); };
    return quad::integrate(f, w.x_min, w.x_max, tol).value;
}

}  // namespace

FieldSampler gaussian_sampler(const GaussianPulseSpec& pulse, int direction) {
    const double amp = pulse.amplitude();
    const double sigma = pulse.sigma();
    const double dir = direction >= 0 ? 1.0 : -1.0;
    FieldSampler s;
    s.eval = [=](double t, double x) {
        // a left mover is the mirror image psi(t, -x)
        const auto p = analytic::pulse_sample(t, dir * x, amp, sigma);
        return FieldSample{p.psi, p.psi_t, dir * p.psi_x};
    };
    s.support = [=](double t) {
        const double centre = dir * t;
        return Window{centre - kWindowSigmas * sigma, centre + kWindowSigmas * sigma};
    };
    return s;
}

FieldSampler zero_sampler() {
    FieldSampler s;
    s.eval = [](double, double) { return FieldSample{0.0, 0.0, 0.0}; };
    s.support = [](double) { return Window{-1.0, 1.0}; };
    return s;
}

double energy(const FieldSampler& field, double t, const quad::Tolerance& tol) {
    return integrate_over_support(field, t, tol, [](const FieldSample& s) {
        return 0.5 * (s.psi_t * s.psi_t + s.psi_x * s.psi_x);
    });
}

double momentum(const FieldSampler& field, double t, const quad::Tolerance& tol) {
    return integrate_over_support(field, t, tol, [](const FieldSample& s) { return -s.psi_t * s.psi_x; });
}

double min_evaluation_time(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode) {
    return 0.5 * mode.ell() + 8.0 * pulse.sigma();
}

double default_evaluation_time(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode) {
    return 0.5 * mode.ell() + 12.0 * pulse.sigma();
}

OverlapAmplitude mixed_overlap_amplitude(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                                         const CircuitSpec& circuit, double t, double rel_tol) {
    greens::require_natural_frame(circuit);
    const double t_min = min_evaluation_time(pulse, mode);
    if (!(t > t_min)) {
        std::ostringstream msg;
        msg << "pulse overlaps the source segment at t = " << t << "; evaluation time must exceed "
            << t_min;
        throw PreconditionError(msg.str(), t_min);
    }

    using Real = long double;
    using C = std::complex<Real>;
    const Real amp = std::sqrt(static_cast<Real>(2) * pulse.sigma() * pulse.E0() /
                               std::sqrt(std::numbers::pi_v<Real>));
    const Real sigma = pulse.sigma();
    const Real omega = mode.omega_e();
    const Real ell = mode.ell();
    const Real tt = t;
    const C coupling = std::sqrt(static_cast<Real>(circuit.gamma_C())) *
                       C(mode.phi().real(), mode.phi().imag());

    const Real lo = tt - static_cast<Real>(kWindowSigmas) * sigma;
    const Real hi = tt + static_cast<Real>(kWindowSigmas) * sigma;
    const quad::Tolerance tol{rel_tol, 0.0, 20000};

    auto mu_h = [&](Real x) -> C {
        const auto c = analytic::pulse_sample(tt, x, amp, sigma);
        const auto q = greens::psi_q_profile(tt, x, omega, ell, coupling);
        return c.psi_t * q.g_t + c.psi_x * q.g_x;
    };
    auto mu_p = [&](Real x) -> C {
        const auto c = analytic::pulse_sample(tt, x, amp, sigma);
        const auto q = greens::psi_q_profile(tt, x, omega, ell, coupling);
        return -(c.psi_t * q.g_x + c.psi_x * q.g_t);
    };

    const C h = quad::integrate(mu_h, lo, hi, tol).value;
    const C p = quad::integrate(mu_p, lo, hi, tol).value;
    return {std::complex<double>(static_cast<double>(h.real()), static_cast<double>(h.imag())),
            std::complex<double>(static_cast<double>(p.real()), static_cast<double>(p.imag()))};
}

OverlapAmplitude mixed_overlap_amplitude(const GaussianPulseSpec& pulse, const ExternalModeSpec& mode,
                                         const CircuitSpec& circuit) {
    return mixed_overlap_amplitude(pulse, mode, circuit, default_evaluation_time(pulse, mode));
}

std::array<std::array<double, 2>, 2> stress_tensor(const FieldSample& s, double f) {
    const double lagrangian = 0.5 * s.psi_t * s.psi_t - 0.5 * s.psi_x * s.psi_x - s.psi * f;
    // dL/d(d_0 psi) = psi_t, dL/d(d_1 psi) = -psi_x
    const std::array<double, 2> conj = {s.psi_t, -s.psi_x};
    const std::array<double, 2> grad = {s.psi_t, s.psi_x};
    std::array<std::array<double, 2>, 2> T{};
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            T[mu][nu] = conj[mu] * grad[nu] - (mu == nu ? lagrangian : 0.0);
        }
    }
    return T;
}

std::array<double, 2> continuity_residual(const FieldSampler& field, const Source& source, double t,
                                          double x, double h) {
    auto tensor_at = [&](double tt, double xx) { return stress_tensor(field.eval(tt, xx), source(tt, xx)); };
    const auto t_plus = tensor_at(t + h, x);
    const auto t_minus = tensor_at(t - h, x);
    const auto x_plus = tensor_at(t, x + h);
    const auto x_minus = tensor_at(t, x - h);
    const double psi = field.eval(t, x).psi;
    const double f_t = (source(t + h, x) - source(t - h, x)) / (2.0 * h);
    const double f_x = (source(t, x + h) - source(t, x - h)) / (2.0 * h);
    const std::array<double, 2> df = {f_t, f_x};

    std::array<double, 2> r{};
    for (int nu = 0; nu < 2; ++nu) {
        const double div = (t_plus[0][nu] - t_minus[0][nu]) / (2.0 * h) +
                           (x_plus[1][nu] - x_minus[1][nu]) / (2.0 * h);
        r[nu] = div - psi * df[nu];
    }
    return r;
}

}  // namespace vacline::functionals
