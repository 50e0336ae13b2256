#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vacline::quad {

/// Convergence target: stop once the summed error estimate is below
/// max(abs, rel * |I|), where abs = abs_scale * (integral of |f|).
struct Tolerance {
    double rel = 1e-12;
    double abs_scale = 1e-10;
    int max_panels = 4000;
};

/// Relative tolerance from VACLINE_TOL when set, otherwise 1e-12.
double default_rel_tolerance();
Tolerance default_tolerance();

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

template <class Value>
struct Result {
    Value value;
    double error;
    double l1;
    int panels;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
    using std::abs;
    return static_cast<double>(abs(v));
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration on [a, b]. The
/// panel with the largest error estimate is bisected until the tolerance is
/// met. Panels whose estimate sits at the rounding floor of their own L1
/// mass are accepted as converged. Works for real or complex integrands.
template <std::floating_point Real, class F>
auto integrate(F&& f, Real a, Real b, const Tolerance& tol = default_tolerance())
    -> Result<decltype(f(a))> {
    using Value = decltype(f(a));
    using Rule = boost::math::quadrature::gauss_kronrod<Real, 21>;

    struct Panel {
        Real a, b;
        Value value;
        double error;
        double l1;
        bool operator<(const Panel& o) const { return error < o.error; }
    };

    const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
    auto evaluate = [&](Real lo, Real hi) {
        Real err = 0;
        Real l1 = 0;
        Value v = Rule::integrate(f, lo, hi, 0, Real(0), &err, &l1);
        double e = static_cast<double>(err);
        // estimates at the rounding level of the panel cannot be improved by bisection
        if (e < 50.0 * eps * static_cast<double>(l1)) e = 0.0;
        return Panel{lo, hi, v, e, static_cast<double>(l1)};
    };

    std::priority_queue<Panel> panels;
    Panel first = evaluate(a, b);
    Value total = first.value;
    double total_error = first.error;
    double l1 = first.l1;
    panels.push(first);

    // below this the estimate is dominated by rounding in the panel sums
    auto target = [&] {
        return std::max({tol.abs_scale * l1, tol.rel * detail::magnitude(total), 100.0 * eps * l1});
    };

    while (total_error > target()) {
        if (static_cast<int>(panels.size()) >= tol.max_panels) {
            std::ostringstream msg;
            msg << "quadrature did not converge: error estimate " << total_error
                << " above target " << target() << " after " << panels.size() << " panels";
            throw QuadratureError(msg.str(), total_error);
        }
        Panel worst = panels.top();
        panels.pop();
        const Real mid = (worst.a + worst.b) / 2;
        Panel left = evaluate(worst.a, mid);
        Panel right = evaluate(mid, worst.b);
        total = total - worst.value + left.value + right.value;
        total_error = total_error - worst.error + left.error + right.error;
        l1 = l1 - worst.l1 + left.l1 + right.l1;
        panels.push(left);
        panels.push(right);
        if (total_error < 0) total_error = 0;
    }

    // re-sum to shed the drift accumulated by the running updates
    Value sum{};
    double err_sum = 0.0;
    const int count = static_cast<int>(panels.size());
    while (!panels.empty()) {
        sum += panels.top().value;
        err_sum += panels.top().error;
        panels.pop();
    }
    return {sum, err_sum, l1, count};
}

}  // namespace vacline::quad
