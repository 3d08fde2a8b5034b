#pragma once

#include <cstddef>
#include <span>

namespace viv {

/// Error metrics of a displacement series against a reference point.
struct CostReport {
    double sse = 0.0;   // [m^2]
    double mse = 0.0;   // [m^2]
    double rmse = 0.0;  // [m]
    double mae = 0.0;   // [m]
    std::size_t n_samples = 0;
};

/// Throws validation_error on an empty series.
CostReport cost_report(std::span<const double> series, double reference = 0.0);

struct SuppressionReport {
    double y_max_free = 0.0;        // [m]
    double y_max_controlled = 0.0;  // [m]
    double suppression_pct = 0.0;   // 100 * (1 - controlled/free)
};

/// Peak |y| of each window; throws validation_error when either window is
/// empty or the free peak is zero (suppression undefined).
SuppressionReport suppression(std::span<const double> y_free,
                              std::span<const double> y_ctrl);

double max_abs(std::span<const double> series);

/// Frequency of the largest spectral peak [Hz]: mean removal, Hann taper,
/// full DFT, quadratic interpolation around the peak bin. Requires at least
/// 64 samples and a non-constant signal.
double dominant_frequency(std::span<const double> series, double dt_sample);

}  // namespace viv
