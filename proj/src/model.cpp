#include "vacline/model.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vacline/units.hpp"

namespace vacline {

namespace {

void require_finite(const char* field, double value) {
    if (!std::isfinite(value)) {
        throw ValidationError(field, std::string(field) + " must be finite");
    }
}

void require_positive(const char* field, double value) {
    require_finite(field, value);
    if (!(value > 0.0)) {
        throw ValidationError(field, std::string(field) + " must be positive");
    }
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_known_key(const std::string& key) {
    for (const auto& k : config_keys()) {
        if (k == key) return true;
    }
    return false;
}

double parse_number(const RawConfig& raw, const std::string& key, double fallback) {
    auto it = raw.find(key);
    if (it == raw.end()) return fallback;
    const std::string& text = it->second;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        // from_chars rejects "inf"/"nan" spellings on some libstdc++ versions
        std::istringstream in(text);
        if (!(in >> value) || !in.eof()) {
            throw ValidationError(key, key + ": cannot parse number '" + text + "'");
        }
    }
    if (!std::isfinite(value)) {
        throw ValidationError(key, key + " must be finite");
    }
    return value;
}

}  // namespace

UnitsMode parse_units(const std::string& text) {
    if (text == "natural") return UnitsMode::natural;
    if (text == "SI" || text == "si") return UnitsMode::si;
    throw ValidationError("units", "units must be 'natural' or 'SI', got '" + text + "'");
}

std::string to_string(UnitsMode mode) {
    return mode == UnitsMode::si ? "SI" : "natural";
}

CircuitSpec::CircuitSpec(double gamma_L, double gamma_C) : gamma_L_(gamma_L), gamma_C_(gamma_C) {
    require_positive("gamma_L", gamma_L);
    require_positive("gamma_C", gamma_C);
}

double CircuitSpec::c() const noexcept {
    return 1.0 / std::sqrt(gamma_L_ * gamma_C_);
}

ExternalModeSpec::ExternalModeSpec(double omega_e, std::complex<double> phi, double ell)
    : omega_e_(omega_e), phi_(phi), ell_(ell) {
    require_positive("omega_e", omega_e);
    require_finite("phi_re", phi.real());
    require_finite("phi_im", phi.imag());
    require_positive("ell", ell);
}

GaussianPulseSpec::GaussianPulseSpec(double E0, double sigma) : E0_(E0), sigma_(sigma) {
    require_finite("E0", E0);
    if (E0 < 0.0) throw ValidationError("E0", "E0 must be non-negative");
    require_positive("sigma", sigma);
}

double GaussianPulseSpec::amplitude() const noexcept {
    return std::sqrt(2.0 * sigma_ * E0_ / std::sqrt(std::numbers::pi));
}

Model Model::natural() const {
    const UnitSystem u = unit_system(*this);
    const double gC = circuit.gamma_C();
    return Model{
        CircuitSpec(1.0 / gC, gC),
        ExternalModeSpec(to_natural(mode.omega_e(), Dimension::frequency, u),
                         mode.phi() * to_natural(1.0, Dimension::flux, u),
                         to_natural(mode.ell(), Dimension::length, u)),
        GaussianPulseSpec(to_natural(pulse.E0(), Dimension::energy, u),
                          to_natural(pulse.sigma(), Dimension::length, u)),
        UnitsMode::natural,
    };
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "gamma_L", "gamma_C", "omega_e", "phi_re", "phi_im", "ell", "E0", "sigma", "units"};
    return keys;
}

RawConfig parse_config(const std::string& text) {
    RawConfig raw;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError("config", std::string("malformed JSON config: ") + e.what());
        }
        for (const auto& [key, value] : doc.items()) {
            if (!is_known_key(key)) throw ValidationError(key, "unknown config key '" + key + "'");
            if (value.is_string()) {
                raw[key] = value.get<std::string>();
            } else if (value.is_number()) {
                std::ostringstream out;
                out.precision(17);
                out << value.get<double>();
                raw[key] = out.str();
            } else {
                throw ValidationError(key, key + ": expected a number or string");
            }
        }
        return raw;
    }

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("line " + std::to_string(lineno),
                                  "config line " + std::to_string(lineno) + " is not 'key = value'");
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!is_known_key(key)) throw ValidationError(key, "unknown config key '" + key + "'");
        if (value.empty()) throw ValidationError(key, key + ": missing value");
        raw[key] = value;
    }
    return raw;
}

RawConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Model validate(const RawConfig& raw) {
    for (const auto& [key, value] : raw) {
        if (!is_known_key(key)) throw ValidationError(key, "unknown config key '" + key + "'");
    }
    UnitsMode units = UnitsMode::natural;
    if (auto it = raw.find("units"); it != raw.end()) units = parse_units(it->second);

    CircuitSpec circuit(parse_number(raw, "gamma_L", 1.0), parse_number(raw, "gamma_C", 1.0));
    ExternalModeSpec mode(parse_number(raw, "omega_e", 1.0),
                          {parse_number(raw, "phi_re", 1.0), parse_number(raw, "phi_im", 0.0)},
                          parse_number(raw, "ell", 1.0));
    GaussianPulseSpec pulse(parse_number(raw, "E0", 1.0), parse_number(raw, "sigma", 1.0));
    return Model{circuit, mode, pulse, units};
}

}  // namespace vacline
