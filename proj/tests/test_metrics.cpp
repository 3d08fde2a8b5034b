#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "viv/errors.hpp"
#include "viv/metrics.hpp"
#include "viv/plant.hpp"

using namespace viv;

TEST_SUITE("metrics") {

TEST_CASE("cost report on hand-computed series") {
    SUBCASE("alternating tenths") {
        const std::vector<double> s = {0.1, -0.1, 0.1, -0.1};
        const CostReport r = cost_report(s);
        CHECK(r.sse == doctest::Approx(0.04).epsilon(1e-12));
        CHECK(r.mse == doctest::Approx(0.01).epsilon(1e-12));
        CHECK(r.rmse == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(r.mae == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(r.n_samples == 4);
    }
    SUBCASE("all zeros") {
        const std::vector<double> s(10, 0.0);
        const CostReport r = cost_report(s);
        CHECK(r.sse == 0.0);
        CHECK(r.mse == 0.0);
        CHECK(r.rmse == 0.0);
        CHECK(r.mae == 0.0);
    }
    SUBCASE("unit magnitudes") {
        const std::vector<double> s = {1.0, -1.0, 1.0};
        CHECK(cost_report(s).mae == doctest::Approx(1.0));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(cost_report({}), validation_error);
    }
}

TEST_CASE("cost report properties") {
    std::mt19937_64 rng(5);
    const auto u = [&] { return 2.0 * (rng() >> 11) * 0x1.0p-53 - 1.0; };
    std::vector<double> s(40);
    for (double& v : s) v = u();

    SUBCASE("permutation invariance") {
        std::vector<double> shuffled = s;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const CostReport a = cost_report(s);
        const CostReport b = cost_report(shuffled);
        CHECK(a.sse == doctest::Approx(b.sse).epsilon(1e-12));
        CHECK(a.mse == doctest::Approx(b.mse).epsilon(1e-12));
        CHECK(a.mae == doctest::Approx(b.mae).epsilon(1e-12));
    }
    SUBCASE("reference shift consistency") {
        const double ref = 0.37;
        std::vector<double> shifted = s;
        for (double& v : shifted) v -= ref;
        const CostReport a = cost_report(s, ref);
        const CostReport b = cost_report(shifted, 0.0);
        CHECK(a.sse == doctest::Approx(b.sse).epsilon(1e-12));
        CHECK(a.rmse == doctest::Approx(b.rmse).epsilon(1e-12));
        CHECK(a.mae == doctest::Approx(b.mae).epsilon(1e-12));
    }
    SUBCASE("rmse and mse stay consistent") {
        const CostReport r = cost_report(s);
        CHECK(r.rmse == doctest::Approx(std::sqrt(r.mse)).epsilon(1e-14));
        CHECK(r.mse == doctest::Approx(r.sse / static_cast<double>(r.n_samples))
                           .epsilon(1e-14));
    }
}

TEST_CASE("suppression percentages reproduce the reference table rows") {
    SUBCASE("composite row") {
        const std::vector<double> f = {0.625, -0.6};
        const std::vector<double> c = {6.3e-4, -1e-5};
        const SuppressionReport r = suppression(f, c);
        CHECK(r.suppression_pct == doctest::Approx(99.9).epsilon(2e-3));
    }
    SUBCASE("simple-with-fault row") {
        const std::vector<double> f = {0.769};
        const std::vector<double> c = {1.10e-2};
        const SuppressionReport r = suppression(f, c);
        CHECK(r.suppression_pct == doctest::Approx(98.6).epsilon(2e-3));
    }
    SUBCASE("equal amplitudes suppress nothing") {
        const std::vector<double> a = {0.5, -0.2};
        CHECK(suppression(a, a).suppression_pct == doctest::Approx(0.0));
    }
    SUBCASE("zero free amplitude is undefined") {
        const std::vector<double> z = {0.0, 0.0};
        const std::vector<double> c = {0.1};
        CHECK_THROWS_AS(suppression(z, c), validation_error);
    }
    SUBCASE("empty windows are errors") {
        const std::vector<double> a = {0.1};
        CHECK_THROWS_AS(suppression({}, a), validation_error);
        CHECK_THROWS_AS(suppression(a, {}), validation_error);
    }
    SUBCASE("scale invariance") {
        const std::vector<double> f = {0.6, -0.4, 0.55};
        const std::vector<double> c = {0.01, -0.02};
        const double base = suppression(f, c).suppression_pct;
        std::vector<double> f2 = f, c2 = c;
        for (double& v : f2) v *= 7.3;
        for (double& v : c2) v *= 7.3;
        CHECK(suppression(f2, c2).suppression_pct ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("dominant frequency of a synthetic sinusoid") {
    const double fs = 20.0;  // Hz
    const double f0 = 0.2;
    std::vector<double> s(2000);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = std::sin(2.0 * kPi * f0 * static_cast<double>(k) / fs);
    }
    const double f = dominant_frequency(s, 1.0 / fs);
    // refined bin spacing is fs/N = 0.01 Hz; stay within half of it
    CHECK(std::abs(f - f0) < 0.005);
}

TEST_CASE("dominant frequency error paths") {
    SUBCASE("short series") {
        const std::vector<double> s(10, 1.0);
        CHECK_THROWS_AS(dominant_frequency(s, 0.1), validation_error);
    }
    SUBCASE("constant series has no peak") {
        const std::vector<double> s(256, 3.7);
        CHECK_THROWS_WITH_AS(dominant_frequency(s, 0.1),
                             doctest::Contains("noise floor"), validation_error);
    }
    SUBCASE("bad sample interval") {
        const std::vector<double> s(256, 0.0);
        CHECK_THROWS_AS(dominant_frequency(s, 0.0), validation_error);
    }
}

TEST_CASE("dominant frequency resolves an off-bin tone") {
    const double fs = 10.0;
    const double f0 = 0.3137;  // deliberately between bins
    std::vector<double> s(1500);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = 2.3 * std::cos(2.0 * kPi * f0 * static_cast<double>(k) / fs + 0.4);
    }
    const double f = dominant_frequency(s, 1.0 / fs);
    CHECK(std::abs(f - f0) < 0.5 * fs / static_cast<double>(s.size()));
}

}  // TEST_SUITE
