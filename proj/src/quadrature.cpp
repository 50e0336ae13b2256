#include "vacline/quadrature.hpp"

#include <cstdlib>
#include <string>

namespace vacline::quad {

double default_rel_tolerance() {
    if (const char* env = std::getenv("VACLINE_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0 && std::isfinite(v)) return v;
        } catch (const std::exception&) {
        }
    }
    return 1e-12;
}

Tolerance default_tolerance() {
    Tolerance t;
    t.rel = default_rel_tolerance();
    return t;
}

}  // namespace vacline::quad
