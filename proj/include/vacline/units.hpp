#pragma once

#include <string>

#include "vacline/model.hpp"

namespace vacline {

enum class Dimension { length, time, frequency, energy, energy_squared, flux };

/// Throws ValidationError for an unrecognised tag.
Dimension parse_dimension(const std::string& tag);

/// Unit context: the mode plus the line's wave speed. Conversions map
/// physical values onto the internal frame in which c = hbar = 1 and
/// lengths keep their numerical value.
struct UnitSystem {
    UnitsMode mode = UnitsMode::natural;
    double c = 1.0;

    double hbar() const noexcept { return mode == UnitsMode::si ? kHbarSI : 1.0; }
};

UnitSystem unit_system(const Model& model);

double to_natural(double value, Dimension dim, const UnitSystem& units);
double from_natural(double value, Dimension dim, const UnitSystem& units);

}  // namespace vacline
