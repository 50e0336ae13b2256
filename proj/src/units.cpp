#include "vacline/units.hpp"

#include <cmath>

namespace vacline {

namespace {

// Multiplier taking a physical value to the internal c = hbar = 1 frame.
// Time is rescaled by c; energy by hbar*c; flux by sqrt(c/hbar) so that the
// dimensionless prefactor keeps its printed form in both frames.
double scale(Dimension dim, const UnitSystem& u) {
    const double c = u.c;
    const double hbar = u.hbar();
    switch (dim) {
        case Dimension::length: return 1.0;
        case Dimension::time: return c;
        case Dimension::frequency: return 1.0 / c;
        case Dimension::energy: return 1.0 / (hbar * c);
        case Dimension::energy_squared: return 1.0 / ((hbar * c) * (hbar * c));
        case Dimension::flux: return std::sqrt(c / hbar);
    }
    throw ValidationError("dimension", "unknown dimension");
}

}  // namespace

Dimension parse_dimension(const std::string& tag) {
    if (tag == "length") return Dimension::length;
    if (tag == "time") return Dimension::time;
    if (tag == "frequency") return Dimension::frequency;
    if (tag == "energy") return Dimension::energy;
    if (tag == "energy_squared") return Dimension::energy_squared;
    if (tag == "flux") return Dimension::flux;
    throw ValidationError("dimension", "unknown dimension tag '" + tag + "'");
}

UnitSystem unit_system(const Model& model) {
    return UnitSystem{model.units, model.circuit.c()};
}

double to_natural(double value, Dimension dim, const UnitSystem& units) {
    return value * scale(dim, units);
}

double from_natural(double value, Dimension dim, const UnitSystem& units) {
    return value / scale(dim, units);
}

}  // namespace vacline
