#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "viv/metrics.hpp"
#include "viv/simulate.hpp"

namespace viv {

/// Per-run summary. Amplitude is evaluated over a steady window: the final
/// 50 s for free vibration, [t_ctrl_on + 20, t_end] for controlled runs. The
/// cost metrics use [t_ctrl_on + 5, t_end] (full window for free runs).
struct RunMetrics {
    double y_max = 0.0;
    double amp_window_begin = 0.0, amp_window_end = 0.0;
    CostReport cost;
    double cost_window_begin = 0.0, cost_window_end = 0.0;
    std::optional<double> f_y_hz;
    std::optional<double> f_x_hz;
    // Samples after activation where |k_C s| < |delta_hat - delta_true|, i.e.
    // the surface feedback is smaller than the estimation residual and the
    // Lyapunov decrease argument gives no guarantee there.
    std::optional<std::size_t> stability_flag_count;
    std::optional<std::size_t> controlled_samples;
};

RunMetrics compute_run_metrics(const ScenarioConfig& cfg, const TimeSeries& series);

struct RunArtifacts {
    std::filesystem::path dir;
    std::filesystem::path series_csv;
    std::filesystem::path network_csv;  // empty when the run has no network
    std::filesystem::path metrics_json;
    std::filesystem::path manifest_json;
    RunMetrics metrics;
};

/// Runs one scenario and writes series.csv, network.csv, metrics.json and
/// manifest.json under cfg.outputs. A diverged run leaves the partial series
/// plus a failure manifest, then throws divergence_error.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

struct ComparisonRow {
    std::string name;
    Controller controller = Controller::none;
    RunMetrics metrics;
    std::optional<double> suppression_pct;  // vs. the free baseline, if present
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::optional<std::size_t> baseline_index;

    std::string to_text() const;
};

/// Runs the grid concurrently. All configs must share plant, wake and
/// timeline sections; a mismatch raises a validation error naming the field.
/// The first `controller: none` entry becomes the suppression baseline.
ComparisonReport run_comparison(const std::vector<ScenarioConfig>& cfgs,
                                const std::filesystem::path& report_path = {});

struct SweepSpec {
    std::vector<double> values;  // reduced velocities, each > 0
    ScenarioConfig base;
};

struct SweepPoint {
    double Ur = 0.0;
    double y_max_over_D = 0.0;
    bool diverged = false;
    std::string error;
};

/// Free-vibration amplitude curve over reduced velocity, varying the spring
/// stiffness K = m (2 pi U / (Ur D))^2. Divergence at one point is recorded
/// and the sweep continues.
std::vector<SweepPoint> run_ur_sweep(const SweepSpec& sweep,
                                     const std::filesystem::path& csv_path = {});

/// Streams a time series in the canonical CSV schema
/// t,x,x_dot,y,y_dot,f_L,f_D,u,delta_true,delta_hat,s,s_D,W_norm,V_proxy
/// (NaN signals become empty fields).
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

/// Node-by-node snapshot: node,center_y,center_ydot,center_u,center_fL,width,W_hat.
void write_network_csv(const std::filesystem::path& path, const RbfNetwork& net);

}  // namespace viv
