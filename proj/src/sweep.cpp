#include "vacline/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vacline/analytic.hpp"
#include "vacline/functionals.hpp"
#include "vacline/quantum.hpp"
#include "vacline/svg.hpp"
#include "vacline/transmission.hpp"

namespace vacline::sweep {

Axis parse_axis(const std::string& name) {
    if (name == "sigma") return Axis::sigma;
    if (name == "omega_e") return Axis::omega_e;
    if (name == "ell") return Axis::ell;
    if (name == "E0") return Axis::E0;
    if (name == "dx") return Axis::dx;
    throw ValidationError("axis", "unknown sweep axis '" + name + "' (expected sigma, omega_e, ell, E0 or dx)");
}

Scenario parse_scenario(const std::string& name) {
    if (name == "analytic") return Scenario::analytic;
    if (name == "quadrature") return Scenario::quadrature;
    if (name == "lattice") return Scenario::lattice;
    if (name == "all") return Scenario::all;
    throw ValidationError("scenario",
                          "unknown scenario '" + name + "' (expected analytic, quadrature, lattice or all)");
}

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::sigma: return "sigma";
        case Axis::omega_e: return "omega_e";
        case Axis::ell: return "ell";
        case Axis::E0: return "E0";
        case Axis::dx: return "dx";
    }
    return "?";
}

std::string to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::analytic: return "analytic";
        case Scenario::quadrature: return "quadrature";
        case Scenario::lattice: return "lattice";
        case Scenario::all: return "all";
    }
    return "?";
}

namespace {

bool runs_lattice(Scenario s) { return s == Scenario::lattice || s == Scenario::all; }

Dimension axis_dimension(Axis axis) {
    switch (axis) {
        case Axis::omega_e: return Dimension::frequency;
        case Axis::E0: return Dimension::energy;
        default: return Dimension::length;
    }
}

}  // namespace

SweepPlan make_plan(Axis axis, double min, double max, int points, Scenario scenario) {
    if (!std::isfinite(min) || !std::isfinite(max)) throw ValidationError("min", "sweep bounds must be finite");
    if (points < 1) throw ValidationError("points", "points must be at least 1");
    if (max < min) throw ValidationError("max", "max must not be below min");
    if (points > 1 && max == min) throw ValidationError("max", "max must exceed min when points > 1");
    const bool nonnegative_ok = axis == Axis::E0;
    if (nonnegative_ok ? min < 0.0 : min <= 0.0)
        throw ValidationError("min", to_string(axis) + (nonnegative_ok ? " must be non-negative" : " must be positive"));

    SweepPlan plan{axis, {}, scenario};
    plan.values.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double v = points == 1 ? min : min + (max - min) * i / (points - 1);
        plan.values.push_back(i == points - 1 ? max : v);
    }
    return plan;
}

Model with_axis_value(const Model& base, Axis axis, double value) {
    Model m = base;
    switch (axis) {
        case Axis::sigma: m.pulse = GaussianPulseSpec(base.pulse.E0(), value); break;
        case Axis::E0: m.pulse = GaussianPulseSpec(value, base.pulse.sigma()); break;
        case Axis::omega_e: m.mode = ExternalModeSpec(value, base.mode.phi(), base.mode.ell()); break;
        case Axis::ell: m.mode = ExternalModeSpec(base.mode.omega_e(), base.mode.phi(), value); break;
        case Axis::dx: break;
    }
    return m;
}

ResultRow evaluate_point(const Model& model, Scenario scenario, const EvalOptions& options) {
    const Model nat = model.natural();
    const UnitSystem units = unit_system(model);
    ResultRow row;

    row.alpha = analytic::alpha(model.mode, model.circuit, model.hbar());
    row.var_analytic = analytic::mixed_variance(model.pulse, model.mode, model.circuit, model.hbar());

    // H_c and P_c by quadrature of the incident pulse
    const auto pulse_field = functionals::gaussian_sampler(nat.pulse);
    row.H_c = from_natural(functionals::energy(pulse_field, 0.0), Dimension::energy, units);
    row.P_c = from_natural(functionals::momentum(pulse_field, 0.0), Dimension::energy, units);

    // the quadrature cross-check runs in every scenario so each row carries its discrepancy
    const auto shift = quantum::variance_shift(nat.pulse, nat.mode, nat.circuit);
    row.var_quadrature = from_natural(shift.energy, Dimension::energy_squared, units);
    row.var_quadrature_P = from_natural(shift.momentum, Dimension::energy_squared, units);
    row.discrepancy = std::abs(row.var_analytic - *row.var_quadrature) /
                      std::max(row.var_analytic, kDiscrepancyFloor);

    if (runs_lattice(scenario)) {
        lattice::TransmissionOptions opts;
        opts.dx = options.lattice_dx;
        opts.courant = options.courant;
        const auto plan = lattice::plan_transmission(nat.circuit, nat.mode, options.a0, opts);
        const auto result = lattice::run_transmission_experiment(plan);
        const auto expected = analytic::transmitted_coefficient(nat.mode, nat.circuit).g_amp * options.a0;
        const double scale = std::sqrt(nat.circuit.gamma_C()) * std::abs(nat.mode.phi() * options.a0) /
                             nat.mode.omega_e();
        row.lattice_A = result.amplitude;
        row.lattice_rel_err = std::abs(result.amplitude - expected) /
                              std::max({std::abs(expected), 1e-3 * scale, kDiscrepancyFloor});
    }
    return row;
}

ResultRow evaluate_row(const Model& base, Axis axis, double value, Scenario scenario,
                       const EvalOptions& options) {
    EvalOptions opts = options;
    if (axis == Axis::dx) {
        if (!(value > 0.0)) throw ValidationError("dx", "dx must be positive");
        opts.lattice_dx = value;
    }
    ResultRow row = evaluate_point(with_axis_value(base, axis, value), scenario, opts);
    row.value = value;
    return row;
}

SweepOutcome run_sweep(const Model& base, const SweepPlan& plan, const EvalOptions& options, int jobs) {
    const std::size_t n = plan.values.size();
    std::vector<std::optional<ResultRow>> rows(n);
    std::vector<std::string> errors(n);
    std::vector<int> codes(n, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{n};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || i > first_failure.load()) return;
            try {
                rows[i] = evaluate_row(base, plan.axis, plan.values[i], plan.scenario, options);
            } catch (const std::invalid_argument& e) {
                errors[i] = e.what();
                codes[i] = 2;
            } catch (const std::exception& e) {
                errors[i] = e.what();
                codes[i] = 3;
            }
            if (codes[i] != 0) {
                std::size_t cur = first_failure.load();
                while (i < cur && !first_failure.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };

    const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    SweepOutcome outcome;
    for (std::size_t i = 0; i < n; ++i) {
        if (codes[i] != 0) {
            char value[32];
            std::snprintf(value, sizeof value, "%.10g", plan.values[i]);
            outcome.error = to_string(plan.axis) + " = " + value + ": " + errors[i];
            outcome.exit_code = codes[i];
            break;
        }
        outcome.rows.push_back(*rows[i]);
    }
    return outcome;
}

namespace {

void cell(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    out << buf;
}

void cell(std::ostream& out, const std::optional<double>& v) {
    if (v) cell(out, *v);
}

}  // namespace

void write_csv_header(std::ostream& out, Axis axis) {
    out << to_string(axis)
        << ",H_c,P_c,alpha,var_analytic,var_quadrature_H,var_quadrature_P,discrepancy,"
           "lattice_A_re,lattice_A_im,lattice_rel_err\n";
}

void write_csv_row(std::ostream& out, const ResultRow& row) {
    cell(out, row.value);
    out << ',';
    cell(out, row.H_c);
    out << ',';
    cell(out, row.P_c);
    out << ',';
    cell(out, row.alpha);
    out << ',';
    cell(out, row.var_analytic);
    out << ',';
    cell(out, row.var_quadrature);
    out << ',';
    cell(out, row.var_quadrature_P);
    out << ',';
    cell(out, row.discrepancy);
    out << ',';
    if (row.lattice_A) cell(out, row.lattice_A->real());
    out << ',';
    if (row.lattice_A) cell(out, row.lattice_A->imag());
    out << ',';
    cell(out, row.lattice_rel_err);
    out << '\n';
}

std::string rows_to_json(const std::vector<ResultRow>& rows, Axis axis) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json doc;
    doc["axis"] = to_string(axis);
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j[to_string(axis)] = r.value;
        j["H_c"] = r.H_c;
        j["P_c"] = r.P_c;
        j["alpha"] = r.alpha;
        j["var_analytic"] = r.var_analytic;
        j["var_quadrature_H"] = opt(r.var_quadrature);
        j["var_quadrature_P"] = opt(r.var_quadrature_P);
        j["discrepancy"] = opt(r.discrepancy);
        j["lattice_A_re"] = r.lattice_A ? nlohmann::json(r.lattice_A->real()) : nlohmann::json(nullptr);
        j["lattice_A_im"] = r.lattice_A ? nlohmann::json(r.lattice_A->imag()) : nlohmann::json(nullptr);
        j["lattice_rel_err"] = opt(r.lattice_rel_err);
        doc["rows"].push_back(std::move(j));
    }
    return doc.dump(2);
}

PeakReport locate_peak(const Model& base, const SweepPlan& plan, const std::vector<ResultRow>& rows) {
    if (plan.axis != Axis::sigma) throw ValidationError("axis", "peak location needs a sigma sweep");
    if (rows.empty()) throw ValidationError("points", "peak location needs at least one row");
    const auto best = std::max_element(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return a.var_analytic < b.var_analytic;
    });
    const double target = analytic::peak_sigma(base.mode, base.circuit);
    const double step = plan.values.size() > 1 ? (plan.values.back() - plan.values.front()) /
                                                     static_cast<double>(plan.values.size() - 1)
                                               : 0.0;
    return {best->value, target, best->value - target, step};
}

std::string render_svg(const Model& base, const SweepPlan& plan, const std::vector<ResultRow>& rows,
                       std::optional<double> marker) {
    const UnitSystem units = unit_system(base);
    const Dimension xdim = axis_dimension(plan.axis);
    svg::Plot plot;
    plot.title = "mixed energy variance vs " + to_string(plan.axis);
    plot.x_label = to_string(plan.axis) + " (natural units, c = hbar = 1)";
    plot.y_label = "<H_m^2> (natural units)";
    svg::Series line{"analytic", {}, "#1f77b4", false};
    svg::Series dots{"quadrature", {}, "#d62728", true};
    for (const auto& r : rows) {
        const double x = to_natural(r.value, xdim, units);
        line.points.emplace_back(x, to_natural(r.var_analytic, Dimension::energy_squared, units));
        if (r.var_quadrature)
            dots.points.emplace_back(x, to_natural(*r.var_quadrature, Dimension::energy_squared, units));
    }
    plot.series.push_back(std::move(line));
    if (!dots.points.empty()) plot.series.push_back(std::move(dots));
    if (marker) plot.vertical_marker = to_natural(*marker, xdim, units);
    return svg::render(plot);
}

}  // namespace vacline::sweep

namespace vacline::sweep {

void validate_ladder(const std::vector<double>& ladder) {
    if (ladder.size() < 3) throw ValidationError("dx", "a convergence ladder needs at least 3 rungs");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0) || !std::isfinite(ladder[i]))
            throw ValidationError("dx", "ladder spacings must be positive and finite");
        if (i > 0 && std::abs(ladder[i] - 0.5 * ladder[i - 1]) > 1e-9 * ladder[i - 1])
            throw ValidationError("dx", "each ladder rung must halve the previous spacing");
    }
}

ConvergenceReport converge(const Model& model, const std::vector<double>& ladder, double courant,
                           std::complex<double> a0) {
    validate_ladder(ladder);
    if (!(courant > 0.0) || courant > lattice::kMaxCourant)
    {
        std::ostringstream msg;
        msg << "Courant number " << courant << " outside (0, " << lattice::kMaxCourant << "]";
        throw lattice::ConfigError(msg.str());
    }
    const Model nat = model.natural();
    ConvergenceReport report{};
    report.expected = analytic::transmitted_coefficient(nat.mode, nat.circuit).g_amp * a0;
    const double denom = std::max(std::abs(report.expected), kDiscrepancyFloor);

    for (double dx : ladder) {
        lattice::TransmissionOptions opts;
        opts.dx = dx;
        opts.courant = courant;
        const auto start = std::chrono::steady_clock::now();
        const auto plan = lattice::plan_transmission(nat.circuit, nat.mode, a0, opts);
        const auto result = lattice::run_transmission_experiment(plan);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.rungs.push_back({dx, result.amplitude, std::abs(result.amplitude - report.expected) / denom,
                                plan.lattice.size(), seconds});
    }

    report.monotone = true;
    for (std::size_t i = 1; i < report.rungs.size(); ++i)
        if (!(report.rungs[i].rel_error < report.rungs[i - 1].rel_error)) report.monotone = false;

    // least-squares slope through (log dx, log err)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(report.rungs.size());
    for (const auto& r : report.rungs) {
        const double x = std::log(r.dx);
        const double y = std::log(std::max(r.rel_error, std::numeric_limits<double>::min()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.converged = report.monotone && report.order >= kMinOrder && report.order <= kMaxOrder;
    return report;
}

}  // namespace vacline::sweep
