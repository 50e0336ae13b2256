#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "vacline/lattice.hpp"
#include "vacline/model.hpp"
#include "vacline/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

/// --config plus one override flag per configuration key.
struct ConfigOptions {
    std::string path;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", path, "Configuration file (key = value lines or a JSON object)");
        for (const auto& key : vacline::config_keys())
            cmd.add_option("--" + key, overrides[key], "Override '" + key + "'");
    }

    vacline::Model load() const {
        vacline::RawConfig raw;
        if (!path.empty()) raw = vacline::load_config_file(path);
        for (const auto& [key, value] : overrides)
            if (!value.empty()) raw[key] = value;
        return vacline::validate(raw);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw vacline::ValidationError("output", "cannot write '" + path + "'");
    return out;
}

void print_line(const std::string& name, const std::string& source, const std::string& value) {
    std::printf("%-16s %-12s %s\n", name.c_str(), source.c_str(), value.c_str());
}

int run_eval(const ConfigOptions& cfg, const std::string& scenario, double dx, double cfl,
             const std::string& csv_path, const std::string& json_path) {
    const auto model = cfg.load();
    vacline::sweep::EvalOptions opts;
    opts.lattice_dx = dx;
    opts.courant = cfl;
    const auto row = vacline::sweep::evaluate_point(model, vacline::sweep::parse_scenario(scenario), opts);

    print_line("units", "config", vacline::to_string(model.units));
    print_line("H_c", "quadrature", num(row.H_c));
    print_line("P_c", "quadrature", num(row.P_c));
    print_line("alpha", "analytic", num(row.alpha));
    print_line("var_H", "analytic", num(row.var_analytic));
    if (row.var_quadrature) print_line("var_H", "quadrature", num(*row.var_quadrature));
    if (row.var_quadrature_P) print_line("var_P", "quadrature", num(*row.var_quadrature_P));
    if (row.discrepancy) print_line("discrepancy", "relative", num(*row.discrepancy));
    if (row.lattice_A) {
        print_line("lattice_A_re", "lattice", num(row.lattice_A->real()));
        print_line("lattice_A_im", "lattice", num(row.lattice_A->imag()));
    }
    if (row.lattice_rel_err) print_line("lattice_rel_err", "lattice", num(*row.lattice_rel_err));

    if (!csv_path.empty()) {
        auto out = open_output(csv_path);
        vacline::sweep::write_csv_header(out, vacline::sweep::Axis::sigma);
        vacline::sweep::write_csv_row(out, row);
    }
    if (!json_path.empty()) open_output(json_path) << vacline::sweep::rows_to_json({row}, vacline::sweep::Axis::sigma) << '\n';
    return 0;
}

struct SweepArgs {
    std::string axis;
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    std::string scenario = "analytic";
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string csv;
    std::string svg;
    std::string json;
    double dx = 0.02;
    double cfl = 0.5;
};

int run_sweep(const ConfigOptions& cfg, const SweepArgs& args) {
    using namespace vacline::sweep;
    const auto model = cfg.load();
    const auto plan = make_plan(parse_axis(args.axis), args.min, args.max, args.points, parse_scenario(args.scenario));
    if (args.jobs < 1) throw vacline::ValidationError("jobs", "jobs must be at least 1");
    EvalOptions opts;
    opts.lattice_dx = args.dx;
    opts.courant = args.cfl;

    const auto outcome = run_sweep(model, plan, opts, args.jobs);

    std::ofstream file;
    if (!args.csv.empty()) file = open_output(args.csv);
    std::ostream& csv = args.csv.empty() ? std::cout : file;
    std::ostream& report = args.csv.empty() ? std::cerr : std::cout;
    write_csv_header(csv, plan.axis);
    for (const auto& row : outcome.rows) write_csv_row(csv, row);
    if (outcome.error) {
        csv << "# error: " << *outcome.error << '\n';
        csv.flush();
        std::cerr << "sweep aborted: " << *outcome.error << '\n';
    }
    csv.flush();
    if (!args.json.empty()) open_output(args.json) << rows_to_json(outcome.rows, plan.axis) << '\n';

    std::optional<double> marker;
    if (plan.axis == Axis::sigma && !outcome.rows.empty()) {
        const auto peak = locate_peak(model, plan, outcome.rows);
        marker = peak.peak_sigma;
        report << "peak: argmax " << num(peak.argmax) << ", expected " << num(peak.peak_sigma) << ", offset "
               << num(peak.offset) << ", grid step " << num(peak.grid_step) << '\n';
    }
    if (!args.svg.empty()) open_output(args.svg) << render_svg(model, plan, outcome.rows, marker);
    return outcome.error ? outcome.exit_code : 0;
}

int run_converge(const ConfigOptions& cfg, const std::vector<double>& ladder, double cfl, bool check) {
    const auto model = cfg.load();
    const auto report = vacline::sweep::converge(model, ladder, cfl);
    std::printf("expected amplitude (%s, %s)\n", num(report.expected.real()).c_str(), num(report.expected.imag() + 0.0).c_str());
    std::printf("%-10s %-8s %-18s %-18s %-12s %s\n", "dx", "cells", "A_re", "A_im", "rel_error", "seconds");
    for (const auto& r : report.rungs)
        std::printf("%-10g %-8d %-18.10g %-18.10g %-12.4e %.2f\n", r.dx, r.cells, r.amplitude.real(),
                    r.amplitude.imag(), r.rel_error, r.seconds);
    std::printf("observed order p = %.4f (accepted range [%.1f, %.1f])\n", report.order, vacline::sweep::kMinOrder,
                vacline::sweep::kMaxOrder);
    if (!report.monotone) std::printf("error ladder is not monotone\n");
    std::printf("%s\n", report.converged ? "CONVERGED" : "NOT CONVERGED");
    if (report.converged) return 0;
    return check ? kExitCheck : kExitNumerical;
}

int run_reproduce(bool check) {
    const auto results = vacline::acceptance::run_all(
        [](const auto& r) { std::cout << vacline::acceptance::format(r) << std::endl; });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - failed << '/' << results.size() << " criteria passed" << std::endl;
    return failed > 0 && check ? kExitCheck : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vacuum-fluctuation pickup of a Gaussian pulse on an LC transmission line"};
    app.require_subcommand(1);

    ConfigOptions eval_cfg, sweep_cfg, converge_cfg;

    auto* eval = app.add_subcommand("eval", "Evaluate every derived quantity at one parameter point");
    eval_cfg.attach(*eval);
    std::string eval_scenario = "quadrature";
    double eval_dx = 0.02, eval_cfl = 0.5;
    std::string eval_csv, eval_json;
    eval->add_option("--scenario", eval_scenario, "analytic, quadrature, lattice or all")->capture_default_str();
    eval->add_option("--dx", eval_dx, "Lattice spacing for the lattice scenario")->capture_default_str();
    eval->add_option("--cfl", eval_cfl, "Courant number dt/dx")->capture_default_str();
    eval->add_option("--csv", eval_csv, "Write the row as CSV");
    eval->add_option("--json", eval_json, "Write the row as JSON");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and tabulate the results");
    sweep_cfg.attach(*sweep);
    SweepArgs sargs;
    sweep->add_option("--axis", sargs.axis, "sigma, omega_e, ell, E0 or dx")->required();
    sweep->add_option("--min", sargs.min, "First axis value")->required();
    sweep->add_option("--max", sargs.max, "Last axis value")->required();
    sweep->add_option("--points", sargs.points, "Number of evenly spaced values")->required();
    sweep->add_option("--scenario", sargs.scenario, "analytic, quadrature, lattice or all")->capture_default_str();
    sweep->add_option("--jobs", sargs.jobs, "Rows evaluated in parallel")->capture_default_str();
    sweep->add_option("--csv", sargs.csv, "CSV output path (standard output when absent)");
    sweep->add_option("--svg", sargs.svg, "SVG curve output path");
    sweep->add_option("--json", sargs.json, "JSON output path");
    sweep->add_option("--dx", sargs.dx, "Lattice spacing for lattice rows")->capture_default_str();
    sweep->add_option("--cfl", sargs.cfl, "Courant number dt/dx")->capture_default_str();

    auto* conv = app.add_subcommand("converge", "Lattice convergence ladder for the transmitted amplitude");
    converge_cfg.attach(*conv);
    std::vector<double> ladder{0.04, 0.02, 0.01};
    double conv_cfl = 0.5;
    bool conv_check = false;
    conv->add_option("--dx", ladder, "Comma-separated spacings, each half the previous")->delimiter(',')->capture_default_str();
    conv->add_option("--cfl", conv_cfl, "Courant number dt/dx")->capture_default_str();
    conv->add_flag("--check", conv_check, "Exit 4 when the ladder does not converge at second order");

    auto* repro = app.add_subcommand("reproduce", "Run the full acceptance suite");
    bool repro_check = false;
    repro->add_flag("--check", repro_check, "Exit 4 when any criterion fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*eval) return run_eval(eval_cfg, eval_scenario, eval_dx, eval_cfl, eval_csv, eval_json);
        if (*sweep) return run_sweep(sweep_cfg, sargs);
        if (*conv) return run_converge(converge_cfg, ladder, conv_cfl, conv_check);
        if (*repro) return run_reproduce(repro_check);
    } catch (const vacline::ValidationError& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
