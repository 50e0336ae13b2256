#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

// Retarded propagator from its Fourier representation
//   G(t, x) = int dk dw / (2 pi)^2 exp(i (k x - w t)) / ((w + i eps)^2 - k^2).
// The w integral is closed in the lower half plane (poles at +-k - i eps),
// leaving -exp(-eps t) sin(k t) / k for t > 0 and zero for t < 0. The k
// integral is conditionally convergent, so it carries a Gaussian regulator
// exp(-(k / K)^2) and is evaluated numerically. Richardson extrapolation
// removes the finite-eps bias.
namespace oracle {

inline double fourier_kernel_at(double t, double x, double eps, double cutoff) {
    if (t <= 0.0) return 0.0;
    auto f = [&](double k) {
        const double reg = std::exp(-(k / cutoff) * (k / cutoff));
        if (k < 1e-12) return t * reg;  // limit of cos(k x) sin(k t) / k
        return std::cos(k * x) * std::sin(k * t) / k * reg;
    };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 8.0 * cutoff, 25, 1e-13);
    // even integrand: int_{-inf}^{inf} = 2 int_0^inf, then divide by 2 pi
    return -std::exp(-eps * t) * integral / std::numbers::pi;
}

/// Two levels of Richardson extrapolation over eps, eps/2, eps/4.
inline double fourier_kernel(double t, double x, double eps = 0.02, double cutoff = 40.0) {
    const double g1 = fourier_kernel_at(t, x, eps, cutoff);
    const double g2 = fourier_kernel_at(t, x, eps / 2, cutoff);
    const double g4 = fourier_kernel_at(t, x, eps / 4, cutoff);
    const double r1 = 2 * g2 - g1;
    const double r2 = 2 * g4 - g2;
    return (4 * r2 - r1) / 3;
}

}  // namespace oracle
