#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vacline {

/// Raised when a configuration value violates a model invariant.
/// `field()` names the offending key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class UnitsMode { natural, si };

/// Reduced Planck constant in J s.
inline constexpr double kHbarSI = 1.054571817e-34;

UnitsMode parse_units(const std::string& text);
std::string to_string(UnitsMode mode);

/// Inductance and capacitance per unit length of the LC ladder.
/// The wave speed is always derived, never stored.
class CircuitSpec {
public:
    CircuitSpec(double gamma_L, double gamma_C);

    double gamma_L() const noexcept { return gamma_L_; }
    double gamma_C() const noexcept { return gamma_C_; }
    double c() const noexcept;

private:
    double gamma_L_;
    double gamma_C_;
};

/// Single external mode: frequency, per-inductor flux amplitude, and the
/// length of the line segment it threads.
class ExternalModeSpec {
public:
    ExternalModeSpec(double omega_e, std::complex<double> phi, double ell);

    double omega_e() const noexcept { return omega_e_; }
    std::complex<double> phi() const noexcept { return phi_; }
    double ell() const noexcept { return ell_; }

private:
    double omega_e_;
    std::complex<double> phi_;
    double ell_;
};

/// Right-moving Gaussian test pulse of energy E0 and length sigma.
class GaussianPulseSpec {
public:
    GaussianPulseSpec(double E0, double sigma);

    double E0() const noexcept { return E0_; }
    double sigma() const noexcept { return sigma_; }
    /// sqrt(2 sigma E0 / sqrt(pi)), the peak field value.
    double amplitude() const noexcept;

private:
    double E0_;
    double sigma_;
};

/// Fully validated parameter set. Values are stored in the units they were
/// given in; `natural()` yields the c = hbar = 1 view used by every
/// numerical module.
struct Model {
    CircuitSpec circuit;
    ExternalModeSpec mode;
    GaussianPulseSpec pulse;
    UnitsMode units;

    double hbar() const noexcept { return units == UnitsMode::si ? kHbarSI : 1.0; }
    Model natural() const;
};

using RawConfig = std::map<std::string, std::string>;

/// Keys accepted in configuration files and as CLI overrides.
const std::vector<std::string>& config_keys();

/// Parses either `key = value` lines (with `#` comments) or a JSON object.
/// Unknown keys and unparsable lines raise ValidationError.
RawConfig parse_config(const std::string& text);
RawConfig load_config_file(const std::string& path);

/// Builds a model from raw key/value pairs. Missing keys take the unit
/// parameter point (all ones, phi_im = 0, natural units).
Model validate(const RawConfig& raw);

}  // namespace vacline
