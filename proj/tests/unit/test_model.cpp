#include <doctest.h>

#include <cmath>

#include "vacline/model.hpp"
#include "vacline/units.hpp"

using namespace vacline;

TEST_CASE("wave speed is derived from the line constants") {
    CHECK(CircuitSpec(1.0, 1.0).c() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(CircuitSpec(4.0, 1.0).c() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(CircuitSpec(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(CircuitSpec(1.0, -2.0), ValidationError);
}

TEST_CASE("invariant violations name the field") {
    try {
        GaussianPulseSpec(1.0, 0.0);
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "sigma");
        CHECK(std::string(e.what()) == "sigma must be positive");
    }
    CHECK_THROWS_AS(GaussianPulseSpec(-1.0, 1.0), ValidationError);
    CHECK_NOTHROW(GaussianPulseSpec(0.0, 1.0));
    CHECK_THROWS_AS(ExternalModeSpec(0.0, {1.0, 0.0}, 1.0), ValidationError);
    CHECK_THROWS_AS(ExternalModeSpec(1.0, {1.0, 0.0}, -1.0), ValidationError);
    CHECK_THROWS_AS(ExternalModeSpec(1.0, {NAN, 0.0}, 1.0), ValidationError);
}

TEST_CASE("pulse amplitude follows from energy and length") {
    const GaussianPulseSpec p(1.0, 1.0);
    CHECK(p.amplitude() == doctest::Approx(std::sqrt(2.0 / std::sqrt(M_PI))).epsilon(1e-15));
}

TEST_CASE("missing keys default to the unit parameter point") {
    const Model m = validate({});
    CHECK(m.circuit.gamma_L() == 1.0);
    CHECK(m.circuit.gamma_C() == 1.0);
    CHECK(m.mode.omega_e() == 1.0);
    CHECK(m.mode.phi() == std::complex<double>(1.0, 0.0));
    CHECK(m.mode.ell() == 1.0);
    CHECK(m.pulse.E0() == 1.0);
    CHECK(m.pulse.sigma() == 1.0);
    CHECK(m.units == UnitsMode::natural);
}

TEST_CASE("key = value configuration with comments") {
    const auto raw = parse_config("# pulse\nsigma = 2.5\n\nomega_e=3   # inline\nphi_im = -0.5\nunits = SI\n");
    CHECK(raw.at("sigma") == "2.5");
    CHECK(raw.at("omega_e") == "3");
    const Model m = validate(raw);
    CHECK(m.pulse.sigma() == 2.5);
    CHECK(m.mode.omega_e() == 3.0);
    CHECK(m.mode.phi() == std::complex<double>(1.0, -0.5));
    CHECK(m.units == UnitsMode::si);
}

TEST_CASE("JSON configuration") {
    const Model m = validate(parse_config(R"({"sigma": 0.5, "E0": 2, "units": "natural"})"));
    CHECK(m.pulse.sigma() == 0.5);
    CHECK(m.pulse.E0() == 2.0);
}

TEST_CASE("malformed configuration names the offending key") {
    auto field_of = [](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of([] { validate(parse_config("bogus = 1\n")); }) == "bogus");
    CHECK(field_of([] { validate(parse_config("sigma = abc\n")); }) == "sigma");
    CHECK(field_of([] { validate(parse_config("sigma = 0\n")); }) == "sigma");
    CHECK(field_of([] { validate(parse_config("E0 = -1\n")); }) == "E0");
    CHECK(field_of([] { validate(parse_config("units = imperial\n")); }) == "units");
    CHECK_THROWS_AS(parse_config("this line has no equals sign\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("{\"sigma\": "), ValidationError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/path.cfg"), ValidationError);
}

TEST_CASE("natural view rescales the line to c = 1") {
    RawConfig raw{{"gamma_L", "4"}, {"gamma_C", "1"}, {"omega_e", "2"}, {"E0", "3"}};
    const Model m = validate(raw);
    const Model n = m.natural();
    CHECK(n.circuit.c() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n.circuit.gamma_C() == m.circuit.gamma_C());
    CHECK(n.mode.omega_e() == doctest::Approx(2.0 / 0.5));
    CHECK(n.pulse.sigma() == m.pulse.sigma());
    CHECK(n.pulse.E0() == doctest::Approx(3.0 / 0.5));
}

TEST_CASE("unit conversions") {
    const UnitSystem natural{UnitsMode::natural, 1.0};
    CHECK(to_natural(3.7, Dimension::length, natural) == 3.7);
    CHECK(to_natural(3.7, Dimension::energy, natural) == 3.7);

    const UnitSystem si{UnitsMode::si, 2.0e8};
    CHECK(to_natural(1.0e9, Dimension::frequency, si) == doctest::Approx(5.0));
    CHECK(to_natural(0.25, Dimension::length, si) == 0.25);

    for (auto dim : {Dimension::length, Dimension::time, Dimension::frequency, Dimension::energy,
                     Dimension::energy_squared, Dimension::flux}) {
        for (double v : {1e-30, 0.3, 7.0, 1e25}) {
            const double back = from_natural(to_natural(v, dim, si), dim, si);
            CHECK(std::abs(back - v) <= 1e-15 * v);
        }
    }
    CHECK(parse_dimension("energy_squared") == Dimension::energy_squared);
    CHECK_THROWS_AS(parse_dimension("mass"), ValidationError);
    CHECK(parse_units("si") == UnitsMode::si);
    CHECK(to_string(UnitsMode::natural) == "natural");
}
