#include "viv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "viv/errors.hpp"
#include "viv/plant.hpp"

namespace viv {

CostReport cost_report(std::span<const double> series, double reference) {
    if (series.empty()) {
        throw validation_error("cost_report: series must be nonempty");
    }
    CostReport r;
    r.n_samples = series.size();
    for (double v : series) {
        const double e = v - reference;
        r.sse += e * e;
        r.mae += std::abs(e);
    }
    r.mse = r.sse / static_cast<double>(r.n_samples);
    r.rmse = std::sqrt(r.mse);
    r.mae /= static_cast<double>(r.n_samples);
    return r;
}

double max_abs(std::span<const double> series) {
    double m = 0.0;
    for (double v : series) m = std::max(m, std::abs(v));
    return m;
}

SuppressionReport suppression(std::span<const double> y_free,
                              std::span<const double> y_ctrl) {
    if (y_free.empty() || y_ctrl.empty()) {
        throw validation_error("suppression: both windows must be nonempty");
    }
    SuppressionReport r;
    r.y_max_free = max_abs(y_free);
    r.y_max_controlled = max_abs(y_ctrl);
    if (r.y_max_free == 0.0) {
        throw validation_error(
            "suppression undefined: free-vibration peak amplitude is zero");
    }
    r.suppression_pct = 100.0 * (1.0 - r.y_max_controlled / r.y_max_free);
    return r;
}

double dominant_frequency(std::span<const double> series, double dt_sample) {
    if (series.size() < 64) {
        throw validation_error("dominant_frequency: need at least 64 samples, got " +
                               std::to_string(series.size()));
    }
    if (!(dt_sample > 0.0)) {
        throw validation_error("dominant_frequency: dt_sample must be > 0");
    }
    const std::size_t n = series.size();

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    double spread = 0.0;
    std::vector<double> windowed(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double centered = series[k] - mean;
        spread = std::max(spread, std::abs(centered));
        const double hann =
            0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(k) /
                                  static_cast<double>(n - 1)));
        windowed[k] = centered * hann;
    }
    if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) {
        throw validation_error(
            "dominant_frequency: signal has no peak above the noise floor");
    }

    // Direct DFT magnitudes up to Nyquist; series here are a few thousand
    // samples, so O(n^2) is cheap and dependency-free.
    const std::size_t half = n / 2;
    std::vector<double> mag(half + 1, 0.0);
    for (std::size_t m2 = 1; m2 <= half; ++m2) {
        double re = 0.0, im = 0.0;
        const double w = -2.0 * kPi * static_cast<double>(m2) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = w * static_cast<double>(k);
            re += windowed[k] * std::cos(phase);
            im += windowed[k] * std::sin(phase);
        }
        mag[m2] = std::hypot(re, im);
    }

    std::size_t peak = 1;
    for (std::size_t m2 = 2; m2 <= half; ++m2) {
        if (mag[m2] > mag[peak]) peak = m2;
    }

    double shift = 0.0;
    if (peak > 1 && peak < half) {
        const double a = mag[peak - 1];
        const double b = mag[peak];
        const double c = mag[peak + 1];
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) {
            shift = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
        }
    }
    return (static_cast<double>(peak) + shift) /
           (static_cast<double>(n) * dt_sample);
}

}  // namespace viv
