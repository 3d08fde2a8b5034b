#include <cmath>

#include "doctest.h"
#include "viv/errors.hpp"
#include "viv/wake.hpp"

using namespace viv;

namespace {

PlantParams ref_plant() { return make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667); }

// Standalone RK4 on the unforced oscillator; the independent oracle for the
// limit-cycle checks.
double unforced_peak_amplitude(const WakeParams& wp, const PlantParams& p,
                               double q0, double t_end, double dt) {
    WakeState ws{q0, 0.0};
    const long n = static_cast<long>(t_end / dt);
    const long tail_start = n - n / 5;  // final 20%
    double peak = 0.0;
    for (long k = 0; k < n; ++k) {
        auto deriv = [&](const WakeState& s) {
            return wake_derivative(wp, p, s, 0.0);
        };
        const WakeRates k1 = deriv(ws);
        const WakeRates k2 = deriv({ws.q + 0.5 * dt * k1.q_dot, ws.q_dot + 0.5 * dt * k1.q_ddot});
        const WakeRates k3 = deriv({ws.q + 0.5 * dt * k2.q_dot, ws.q_dot + 0.5 * dt * k2.q_ddot});
        const WakeRates k4 = deriv({ws.q + dt * k3.q_dot, ws.q_dot + dt * k3.q_ddot});
        ws.q += (dt / 6.0) * (k1.q_dot + 2 * k2.q_dot + 2 * k3.q_dot + k4.q_dot);
        ws.q_dot += (dt / 6.0) * (k1.q_ddot + 2 * k2.q_ddot + 2 * k3.q_ddot + k4.q_ddot);
        if (k >= tail_start) peak = std::max(peak, std::abs(ws.q));
    }
    return peak;
}

}  // namespace

TEST_SUITE("wake") {

TEST_CASE("rest point of the unforced oscillator") {
    const WakeRates r = wake_derivative(WakeParams{}, ref_plant(), {0.0, 0.0}, 0.0);
    CHECK(r.q_dot == 0.0);
    CHECK(r.q_ddot == 0.0);
}

TEST_CASE("restoring term matches the shedding frequency") {
    const PlantParams p = ref_plant();
    const WakeParams wp;  // St = 0.183, U = D = 1
    const WakeRates r = wake_derivative(wp, p, {1.0, 0.0}, 0.0);
    CHECK(r.q_ddot == doctest::Approx(-1.3220).epsilon(1e-4));
    const double omega_s = shedding_frequency(wp, p);
    CHECK(r.q_ddot == doctest::Approx(-omega_s * omega_s));
}

TEST_CASE("limit cycle amplitude is 2 within 2 percent for any seed amplitude") {
    const PlantParams p = ref_plant();
    const WakeParams wp;
    for (double q0 : {0.05, 1.0, 2.5, 4.0}) {
        const double peak = unforced_peak_amplitude(wp, p, q0, 300.0, 0.005);
        CHECK_MESSAGE(peak > 1.9, "q0 = ", q0, " peak = ", peak);
        CHECK_MESSAGE(peak < 2.1, "q0 = ", q0, " peak = ", peak);
    }
}

TEST_CASE("stationary force map hits the calibration anchors") {
    PlantParams p = ref_plant();
    const WakeParams wp;
    SUBCASE("lift at the limit cycle recovers the reference lift coefficient") {
        const FluidForces f = forces_from_wake(wp, p, {2.0, 0.0});
        CHECK(f.f_L == doctest::Approx(0.08986).epsilon(2e-4));
        const double C_L = f.f_L / (0.5 * p.rho * p.U * p.U * p.D);
        CHECK(C_L == doctest::Approx(0.23).epsilon(1e-12));
    }
    SUBCASE("mean drag at q = 0") {
        const FluidForces f = forces_from_wake(wp, p, {0.0, 0.0});
        CHECK(f.f_L == 0.0);
        CHECK(f.f_D == doctest::Approx(0.4493).epsilon(1e-3));
    }
    SUBCASE("both forces vanish with the fluid") {
        p.rho = 0.0;
        const FluidForces f = forces_from_wake(wp, p, {1.7, 0.3});
        CHECK(f.f_L == 0.0);
        CHECK(f.f_D == 0.0);
    }
}

TEST_CASE("lift is odd and drag is even in q") {
    const PlantParams p = ref_plant();
    const WakeParams wp;
    for (double q : {0.3, 1.0, 2.0, 3.7}) {
        const FluidForces fp = forces_from_wake(wp, p, {q, 0.0});
        const FluidForces fm = forces_from_wake(wp, p, {-q, 0.0});
        CHECK(fp.f_L == doctest::Approx(-fm.f_L));
        CHECK(fp.f_D == doctest::Approx(fm.f_D));
    }
}

TEST_CASE("moving-cylinder corrections oppose the motion") {
    const PlantParams p = ref_plant();
    const WakeParams wp;
    const WakeState ws{1.0, 0.0};
    const FluidForces still = forces_on_moving_cylinder(wp, p, ws, {});
    const FluidForces base = forces_from_wake(wp, p, ws);
    CHECK(still.f_L == base.f_L);
    CHECK(still.f_D == base.f_D);

    State2DOF moving;
    moving.y_dot = 0.4;
    moving.x_dot = 0.1;
    const FluidForces f = forces_on_moving_cylinder(wp, p, ws, moving);
    CHECK(f.f_L == doctest::Approx(base.f_L - 0.5 * p.rho * p.U * p.D * wp.C_stall * 0.4));
    CHECK(f.f_D == doctest::Approx(base.f_D - p.rho * p.U * p.D * wp.C_stall * 0.1));
}

TEST_CASE("parameter validation") {
    WakeParams wp;
    wp.St = 0.0;
    CHECK_THROWS_AS(validate(wp), validation_error);
    wp = WakeParams{};
    wp.beta_d = -0.1;
    CHECK_THROWS_AS(validate(wp), validation_error);
}

}  // TEST_SUITE
