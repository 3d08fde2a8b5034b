#include "doctest.h"
#include "viv/errors.hpp"
#include "viv/plant.hpp"

using namespace viv;

TEST_SUITE("plant") {

TEST_CASE("derived quantities round-trip the reference parameter set") {
    const PlantParams p = make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667);
    const DerivedQuantities d = derive_quantities(p);
    CHECK(d.f_n == doctest::Approx(0.2000).epsilon(1e-3));
    CHECK(std::abs(d.Ur - 5.0) < 0.01);
    CHECK(std::abs(d.Re - 150.0) < 0.5);
    CHECK(d.omega_n == doctest::Approx(2.0 * kPi * d.f_n));
    CHECK(d.m_star == doctest::Approx(2.56).epsilon(1e-9));
}

TEST_CASE("derive_quantities is pure") {
    const PlantParams p = make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667);
    const DerivedQuantities a = derive_quantities(p);
    const DerivedQuantities b = derive_quantities(p);
    CHECK(a.f_n == b.f_n);
    CHECK(a.Ur == b.Ur);
    CHECK(a.Re == b.Re);
    CHECK(a.m_star == b.m_star);
}

TEST_CASE("non-positive parameters are rejected by name") {
    CHECK_THROWS_WITH_AS(make_plant_params(1.0, 0.0, 1.0, 1.0, 0.00667),
                         doctest::Contains("plant.K"), validation_error);
    CHECK_THROWS_WITH_AS(make_plant_params(-1.0, 2.48, 1.0, 1.0, 0.00667),
                         doctest::Contains("m"), validation_error);
    CHECK_THROWS_AS(make_plant_params(1.571, 2.48, 1.0, 1.0, 0.0),
                    validation_error);
}

TEST_CASE("input gain stays consistent with the mass") {
    PlantParams p = make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667);
    CHECK(p.b * p.m == doctest::Approx(1.0).epsilon(1e-15));
    p.b = 0.5;
    CHECK_THROWS_AS(validate(p), validation_error);
    refresh_input_gain(p);
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("default_rho inverts the mass-ratio definition") {
    CHECK(default_rho(1.571, 2.56, 1.0) == doctest::Approx(0.7814).epsilon(1e-4));
    CHECK(default_rho(0.7854, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(default_rho(1.571, 2.56, 2.0) == doctest::Approx(0.19534).epsilon(1e-4));
    CHECK_THROWS_AS(default_rho(0.0, 2.56, 1.0), validation_error);
    CHECK_THROWS_AS(default_rho(1.0, -2.0, 1.0), validation_error);
}

TEST_CASE("rho default and mass-ratio back-computation are inverse maps") {
    const PlantParams p = make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667);
    const DerivedQuantities d = derive_quantities(p);
    const double rho_back = default_rho(p.m, d.m_star, p.D);
    CHECK(rho_back == doctest::Approx(p.rho).epsilon(1e-12));
}

}  // TEST_SUITE
