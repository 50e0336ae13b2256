#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vacline/model.hpp"
#include "vacline/units.hpp"

namespace vacline::sweep {

enum class Axis { sigma, omega_e, ell, E0, dx };
enum class Scenario { analytic, quadrature, lattice, all };

Axis parse_axis(const std::string& name);
Scenario parse_scenario(const std::string& name);
std::string to_string(Axis axis);
std::string to_string(Scenario scenario);

struct SweepPlan {
    Axis axis;
    std::vector<double> values;  ///< sorted ascending
    Scenario scenario;
};

/// `points` values evenly spaced on [min, max]. Throws ValidationError on
/// non-finite bounds, fewer than 1 point, or values the axis forbids.
SweepPlan make_plan(Axis axis, double min, double max, int points, Scenario scenario);

struct EvalOptions {
    double lattice_dx = 0.02;
    double courant = 0.5;
    std::complex<double> a0{1.0, 0.0};
};

/// One evaluated parameter point. Energies are reported in the model's units;
/// lattice amplitudes are in the internal frame.
struct ResultRow {
    double value = 0.0;
    double H_c = 0.0;
    double P_c = 0.0;
    double alpha = 0.0;
    double var_analytic = 0.0;
    std::optional<double> var_quadrature;      ///< <H_m^2> from quadrature
    std::optional<double> var_quadrature_P;    ///< <P_m^2> from quadrature
    std::optional<double> discrepancy;         ///< |analytic - quadrature| / max(analytic, floor)
    std::optional<std::complex<double>> lattice_A;
    std::optional<double> lattice_rel_err;     ///< |A - expected| / max(|expected|, floor)
};

inline constexpr double kDiscrepancyFloor = 1e-300;

/// Copy of `base` with the axis parameter replaced (dx leaves the model unchanged).
Model with_axis_value(const Model& base, Axis axis, double value);

ResultRow evaluate_row(const Model& base, Axis axis, double value, Scenario scenario,
                       const EvalOptions& options = {});

ResultRow evaluate_point(const Model& model, Scenario scenario, const EvalOptions& options = {});

struct SweepOutcome {
    std::vector<ResultRow> rows;  ///< rows preceding the first failure, in axis order
    std::optional<std::string> error;
    int exit_code = 0;            ///< 2 config error, 3 numerical failure
};

/// Evaluates rows on up to `jobs` threads; output order follows the plan.
SweepOutcome run_sweep(const Model& base, const SweepPlan& plan, const EvalOptions& options, int jobs);

/// Fixed column order, the first column named after the axis:
/// value,H_c,P_c,alpha,var_analytic,var_quadrature_H,var_quadrature_P,discrepancy,
/// lattice_A_re,lattice_A_im,lattice_rel_err. Absent values are empty cells.
void write_csv_header(std::ostream& out, Axis axis);
void write_csv_row(std::ostream& out, const ResultRow& row);
std::string rows_to_json(const std::vector<ResultRow>& rows, Axis axis);

struct PeakReport {
    double argmax;
    double peak_sigma;
    double offset;
    double grid_step;
};

/// Location of the largest analytic variance on a sigma sweep.
PeakReport locate_peak(const Model& base, const SweepPlan& plan, const std::vector<ResultRow>& rows);

/// Curve of the analytic variance (line) and quadrature values (markers)
/// against the axis, both converted to the internal frame for plotting.
std::string render_svg(const Model& base, const SweepPlan& plan, const std::vector<ResultRow>& rows,
                       std::optional<double> marker = std::nullopt);

struct ConvergenceRung {
    double dx;
    std::complex<double> amplitude;
    double rel_error;  ///< against the closed-form transmitted amplitude
    int cells;
    double seconds;
};

struct ConvergenceReport {
    std::vector<ConvergenceRung> rungs;
    std::complex<double> expected;
    double order;      ///< least-squares slope of log(error) against log(dx)
    bool monotone;     ///< errors fall at every rung
    bool converged;    ///< monotone and order within [kMinOrder, kMaxOrder]
};

inline constexpr double kMinOrder = 1.8;
inline constexpr double kMaxOrder = 2.2;

/// Throws ValidationError unless the ladder has at least three rungs, each
/// half the previous one (to 1e-9 relative).
void validate_ladder(const std::vector<double>& ladder);

/// Coherent-drive transmission error at each rung and its observed order.
/// Rejects Courant numbers above the lattice limit before any stepping.
ConvergenceReport converge(const Model& model, const std::vector<double>& ladder, double courant = 0.5,
                           std::complex<double> a0 = {1.0, 0.0});

}  // namespace vacline::sweep
