#include <random>
#include <vector>

#include "doctest.h"
#include "viv/control.hpp"
#include "viv/errors.hpp"

using namespace viv;

namespace {
ControllerGains table_gains() { return ControllerGains{}; }  // reference values
}

TEST_SUITE("control") {

TEST_CASE("tracking signals") {
    const ControllerGains g = table_gains();
    SUBCASE("perfect tracking zeroes every signal") {
        State2DOF st;
        st.y = 0.25;
        st.y_dot = -0.1;
        EstimatorState est{0.25, -0.1};
        const TrackingSignals sig = tracking_signals(st, est, 0.25, -0.1, g);
        CHECK(sig.e == 0.0);
        CHECK(sig.e_dot == 0.0);
        CHECK(sig.s == 0.0);
        CHECK(sig.e_D == 0.0);
        CHECK(sig.e_D_dot == 0.0);
        CHECK(sig.s_D == 0.0);
    }
    SUBCASE("sliding surface combines error and rate") {
        State2DOF st;
        st.y = 0.1;
        st.y_dot = 0.5;
        const TrackingSignals sig = tracking_signals(st, {0.1, 0.5}, 0.0, 0.0, g);
        CHECK(sig.s == doctest::Approx(1.7));
    }
    SUBCASE("estimation surface uses its own slope") {
        State2DOF st;  // zero
        EstimatorState est{1.0, 0.0};
        const TrackingSignals sig = tracking_signals(st, est, 0.0, 0.0, g);
        CHECK(sig.e_D == doctest::Approx(1.0));
        CHECK(sig.s_D == doctest::Approx(0.01));
    }
    SUBCASE("construction invariants hold for random inputs") {
        std::mt19937_64 rng(17);
        const auto u = [&] { return 4.0 * (rng() >> 11) * 0x1.0p-53 - 2.0; };
        for (int i = 0; i < 100; ++i) {
            State2DOF st;
            st.y = u();
            st.y_dot = u();
            EstimatorState est{u(), u()};
            const double y_d = u(), y_d_dot = u();
            const TrackingSignals sig = tracking_signals(st, est, y_d, y_d_dot, g);
            CHECK(sig.s == doctest::Approx(sig.e_dot + g.lambda * sig.e));
            CHECK(sig.s_D == doctest::Approx(sig.e_D_dot + g.lambda_D * sig.e_D));
        }
    }
}

TEST_CASE("control command") {
    const ControllerGains g = table_gains();
    const double b = 1.0 / 1.571;
    SUBCASE("pure surface feedback") {
        TrackingSignals sig;
        sig.s = 1.0;
        CHECK(fel_command(0.0, b, 0.0, 0.0, sig, g) ==
              doctest::Approx(-2.3565).epsilon(1e-4));
    }
    SUBCASE("equilibrium commands nothing") {
        CHECK(fel_command(0.0, b, 0.0, 0.0, {}, g) == 0.0);
    }
    SUBCASE("drift cancellation is exact feedback linearization") {
        CHECK(fel_command(1.0, b, 0.0, 0.0, {}, g) ==
              doctest::Approx(-1.571).epsilon(1e-12));
    }
    SUBCASE("zero gain is rejected") {
        CHECK_THROWS_AS(fel_command(0.0, 0.0, 0.0, 0.0, {}, g), validation_error);
    }
}

TEST_CASE("smc equals the learned law with the estimate removed") {
    const ControllerGains g = table_gains();
    std::mt19937_64 rng(23);
    const auto u = [&] { return 6.0 * (rng() >> 11) * 0x1.0p-53 - 3.0; };
    for (int i = 0; i < 200; ++i) {
        TrackingSignals sig;
        sig.e = u();
        sig.e_dot = u();
        sig.s = sig.e_dot + g.lambda * sig.e;
        const double f = u();
        const double y_dd = u();
        const double b = 1.0 / 1.571;
        const double delta_hat = u();
        CHECK(smc_command(f, b, y_dd, sig, g) ==
              fel_command(f, b, 0.0, y_dd, sig, g));
        // the two laws differ by exactly the compensated estimate
        CHECK(fel_command(f, b, delta_hat, y_dd, sig, g) -
                  smc_command(f, b, y_dd, sig, g) ==
              doctest::Approx(-delta_hat / b).epsilon(1e-12));
    }
}

TEST_CASE("lyapunov diagnostics") {
    SUBCASE("surface-only value") {
        const std::vector<double> w;
        CHECK(lyapunov_simple(2.0, w, 1.5) == doctest::Approx(2.0));
        CHECK(lyapunov_simple(0.0, w, 1.5) == 0.0);
    }
    SUBCASE("weight term divides by the learning rate") {
        const std::vector<double> w = {3.0};
        CHECK(lyapunov_simple(0.0, w, 1.5) == doctest::Approx(3.0));
    }
    SUBCASE("composite adds the estimation surface") {
        const std::vector<double> w;
        CHECK(lyapunov_composite(1.0, 1.0, 6.0, w, 1.5) == doctest::Approx(3.5));
        CHECK(lyapunov_composite(0.0, 0.0, 6.0, w, 1.5) == 0.0);
    }
    SUBCASE("k_D = 0 reduces to the simple value") {
        const std::vector<double> w = {0.4, -1.2};
        CHECK(lyapunov_composite(0.7, 2.0, 0.0, w, 1.5) ==
              doctest::Approx(lyapunov_simple(0.7, w, 1.5)));
    }
}

TEST_CASE("gain validation") {
    ControllerGains g = table_gains();
    g.lambda = 0.0;
    CHECK_THROWS_WITH_AS(validate(g), doctest::Contains("lambda"),
                         validation_error);
    g = table_gains();
    g.k_D = -1.0;
    CHECK_THROWS_AS(validate(g), validation_error);
}

}  // TEST_SUITE
