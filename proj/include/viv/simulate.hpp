#pragma once

#include <optional>
#include <string>
#include <vector>

#include "viv/scenario.hpp"

namespace viv {

/// One decimated log record. Signals that do not exist under the selected
/// controller (e.g. s_D outside composite learning) are NaN here and empty
/// fields in the CSV.
struct Sample {
    double t = 0.0;
    double x = 0.0, x_dot = 0.0, y = 0.0, y_dot = 0.0;
    double f_L = 0.0, f_D = 0.0;
    double u = 0.0;
    double delta_true = 0.0;
    double delta_hat = 0.0;
    double s = 0.0;
    double s_D = 0.0;
    double W_norm = 0.0;   // max|W_hat_i|
    double V_proxy = 0.0;  // Lyapunov diagnostic, W_hat in place of W_tilde
};

struct TimeSeries {
    std::vector<Sample> samples;
    Controller controller = Controller::none;
    double dt_sample = 0.0;  // dt * log_every

    std::vector<double> column(double Sample::* field) const;
    /// Values of `field` at sample times within [t_begin, t_end].
    std::vector<double> window(double Sample::* field, double t_begin,
                               double t_end) const;
};

struct DivergenceInfo {
    double t = 0.0;
    std::string field;
};

struct SimResult {
    TimeSeries series;
    std::optional<RbfNetwork> network;  // final snapshot, learning modes only
    std::optional<DivergenceInfo> divergence;

    bool ok() const { return !divergence.has_value(); }
};

/// Runs the closed loop for one scenario. Returns the decimated series and,
/// when the run diverged, the partial series plus the failure record instead
/// of throwing. Configuration problems still throw validation_error.
SimResult simulate(const ScenarioConfig& cfg);

}  // namespace viv
