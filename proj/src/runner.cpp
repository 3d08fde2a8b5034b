#include "viv/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "viv/csv.hpp"
#include "viv/errors.hpp"

#ifndef VIVLAB_VERSION
#define VIVLAB_VERSION "dev"
#endif

namespace viv {

using nlohmann::json;

namespace {

void write_cell(std::ofstream& out, double v, bool leading_comma = true) {
    if (leading_comma) out << ',';
    if (!std::isnan(v)) out << csv::format_number(v);
}

json metrics_to_json(const RunMetrics& m) {
    json j;
    j["y_max"] = m.y_max;
    j["amp_window"] = {m.amp_window_begin, m.amp_window_end};
    j["cost"] = {{"sse", m.cost.sse},
                 {"mse", m.cost.mse},
                 {"rmse", m.cost.rmse},
                 {"mae", m.cost.mae},
                 {"n_samples", m.cost.n_samples}};
    j["cost_window"] = {m.cost_window_begin, m.cost_window_end};
    j["dominant_freq_y_hz"] = m.f_y_hz ? json(*m.f_y_hz) : json(nullptr);
    j["dominant_freq_x_hz"] = m.f_x_hz ? json(*m.f_x_hz) : json(nullptr);
    if (m.f_x_hz && m.f_y_hz && *m.f_y_hz != 0.0) {
        j["freq_ratio_x_over_y"] = *m.f_x_hz / *m.f_y_hz;
    } else {
        j["freq_ratio_x_over_y"] = nullptr;
    }
    if (m.stability_flag_count) {
        j["stability_flags"] = {{"flagged", *m.stability_flag_count},
                                {"of", *m.controlled_samples}};
    } else {
        j["stability_flags"] = nullptr;
    }
    return j;
}

void dump_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
}

json make_manifest(const ScenarioConfig& cfg, const std::string& status) {
    json j;
    j["tool"] = "vivlab";
    j["version"] = VIVLAB_VERSION;
    j["status"] = status;
    j["config"] = scenario_to_json(cfg);
    j["artifacts"] = {{"series", "series.csv"},
                      {"network", cfg.uses_network() ? json("network.csv") : json(nullptr)},
                      {"metrics", "metrics.json"}};
    return j;
}

}  // namespace

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot write '" + path.string() + "'");
    }
    out << "t,x,x_dot,y,y_dot,f_L,f_D,u,delta_true,delta_hat,s,s_D,W_norm,V_proxy\n";
    for (const Sample& r : series.samples) {
        write_cell(out, r.t, false);
        write_cell(out, r.x);
        write_cell(out, r.x_dot);
        write_cell(out, r.y);
        write_cell(out, r.y_dot);
        write_cell(out, r.f_L);
        write_cell(out, r.f_D);
        write_cell(out, r.u);
        write_cell(out, r.delta_true);
        write_cell(out, r.delta_hat);
        write_cell(out, r.s);
        write_cell(out, r.s_D);
        write_cell(out, r.W_norm);
        write_cell(out, r.V_proxy);
        out << '\n';
    }
}

void write_network_csv(const std::filesystem::path& path, const RbfNetwork& net) {
    std::ofstream out(path);
    if (!out) {
        throw validation_error("cannot write '" + path.string() + "'");
    }
    out << "node,center_y,center_ydot,center_u,center_fL,width,W_hat\n";
    for (int i = 0; i < net.n; ++i) {
        const auto& c = net.centers[static_cast<std::size_t>(i)];
        out << i;
        for (double v : c) out << ',' << csv::format_number(v);
        out << ',' << csv::format_number(net.widths[static_cast<std::size_t>(i)]);
        out << ',' << csv::format_number(net.weights[static_cast<std::size_t>(i)]);
        out << '\n';
    }
}

RunMetrics compute_run_metrics(const ScenarioConfig& cfg, const TimeSeries& series) {
    RunMetrics m;
    const double t_end = cfg.timeline.t_end;
    if (cfg.has_controller()) {
        m.amp_window_begin = std::min(cfg.timeline.t_ctrl_on + 20.0, t_end);
        m.cost_window_begin = std::min(cfg.timeline.t_ctrl_on + 5.0, t_end);
    } else {
        m.amp_window_begin = std::max(0.0, t_end - 50.0);
        m.cost_window_begin = m.amp_window_begin;
    }
    m.amp_window_end = t_end;
    m.cost_window_end = t_end;

    const auto y_amp = series.window(&Sample::y, m.amp_window_begin, t_end);
    const auto y_cost = series.window(&Sample::y, m.cost_window_begin, t_end);
    if (!y_amp.empty()) m.y_max = max_abs(y_amp);
    if (!y_cost.empty()) m.cost = cost_report(y_cost, 0.0);

    const auto x_amp = series.window(&Sample::x, m.amp_window_begin, t_end);
    try {
        m.f_y_hz = dominant_frequency(y_amp, series.dt_sample);
    } catch (const validation_error&) {
    }
    try {
        m.f_x_hz = dominant_frequency(x_amp, series.dt_sample);
    } catch (const validation_error&) {
    }

    if (cfg.has_controller()) {
        std::size_t flagged = 0, total = 0;
        for (const Sample& s : series.samples) {
            if (s.t < cfg.timeline.t_ctrl_on || std::isnan(s.s) ||
                std::isnan(s.delta_hat)) {
                continue;
            }
            ++total;
            if (std::abs(cfg.gains.k_C * s.s) <
                std::abs(s.delta_hat - s.delta_true)) {
                ++flagged;
            }
        }
        if (total > 0) {
            m.stability_flag_count = flagged;
            m.controlled_samples = total;
        }
    }
    return m;
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
    validate_scenario(cfg);

    RunArtifacts art;
    art.dir = cfg.outputs;
    std::filesystem::create_directories(art.dir);
    art.series_csv = art.dir / "series.csv";
    art.metrics_json = art.dir / "metrics.json";
    art.manifest_json = art.dir / "manifest.json";

    const SimResult result = simulate(cfg);

    write_series_csv(art.series_csv, result.series);
    if (result.network) {
        art.network_csv = art.dir / "network.csv";
        write_network_csv(art.network_csv, *result.network);
    }

    if (result.divergence) {
        json manifest = make_manifest(cfg, "diverged");
        manifest["divergence"] = {{"t", result.divergence->t},
                                  {"field", result.divergence->field}};
        dump_json(art.manifest_json, manifest);
        throw divergence_error(result.divergence->t, result.divergence->field);
    }

    art.metrics = compute_run_metrics(cfg, result.series);
    dump_json(art.metrics_json, metrics_to_json(art.metrics));
    dump_json(art.manifest_json, make_manifest(cfg, "ok"));
    return art;
}

namespace {

// First leaf-level key at which two JSON sections differ, for error messages.
std::string first_difference(const json& a, const json& b, const std::string& prefix) {
    if (a.is_object() && b.is_object()) {
        for (const auto& [key, value] : a.items()) {
            if (!b.contains(key)) return prefix + key;
            const std::string d = first_difference(value, b.at(key), prefix + key + ".");
            if (!d.empty()) return d;
        }
        for (const auto& [key, _] : b.items()) {
            if (!a.contains(key)) return prefix + key;
        }
        return {};
    }
    return a == b ? std::string{} : prefix.substr(0, prefix.size() - 1);
}

}  // namespace

ComparisonReport run_comparison(const std::vector<ScenarioConfig>& cfgs,
                                const std::filesystem::path& report_path) {
    if (cfgs.empty()) {
        throw validation_error("compare: need at least one scenario");
    }
    const json ref = scenario_to_json(cfgs.front());
    for (std::size_t i = 1; i < cfgs.size(); ++i) {
        const json other = scenario_to_json(cfgs[i]);
        for (const char* section : {"plant", "wake", "timeline"}) {
            const std::string diff = first_difference(
                ref.at(section), other.at(section), std::string(section) + ".");
            if (!diff.empty()) {
                throw validation_error(
                    "compare: scenario '" + cfgs[i].name +
                    "' differs from '" + cfgs.front().name + "' in shared field '" +
                    diff + "'");
            }
        }
    }

    std::vector<std::future<RunArtifacts>> futures;
    futures.reserve(cfgs.size());
    for (const ScenarioConfig& cfg : cfgs) {
        futures.push_back(std::async(std::launch::async,
                                     [&cfg]() { return run_scenario(cfg); }));
    }

    ComparisonReport report;
    report.rows.reserve(cfgs.size());
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        ComparisonRow row;
        row.name = cfgs[i].name;
        row.controller = cfgs[i].controller;
        row.metrics = futures[i].get().metrics;
        report.rows.push_back(std::move(row));
        if (!report.baseline_index && cfgs[i].controller == Controller::none) {
            report.baseline_index = i;
        }
    }

    if (report.baseline_index) {
        const double y_free = report.rows[*report.baseline_index].metrics.y_max;
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            if (i == *report.baseline_index || y_free <= 0.0) continue;
            report.rows[i].suppression_pct =
                100.0 * (1.0 - report.rows[i].metrics.y_max / y_free);
        }
    }

    if (!report_path.empty()) {
        json j;
        j["tool"] = "vivlab";
        j["version"] = VIVLAB_VERSION;
        j["baseline"] = report.baseline_index ? json(report.rows[*report.baseline_index].name)
                                              : json(nullptr);
        json rows = json::array();
        for (const ComparisonRow& row : report.rows) {
            json r;
            r["name"] = row.name;
            r["controller"] = to_string(row.controller);
            r["metrics"] = metrics_to_json(row.metrics);
            r["suppression_pct"] =
                row.suppression_pct ? json(*row.suppression_pct) : json(nullptr);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        std::filesystem::create_directories(report_path.parent_path().empty()
                                                ? "."
                                                : report_path.parent_path());
        dump_json(report_path, j);
    }
    return report;
}

std::string ComparisonReport::to_text() const {
    std::ostringstream out;
    const bool with_suppression = baseline_index.has_value();
    out << "scenario              controller  y_max [m]   ";
    if (with_suppression) out << "suppr [%]  ";
    out << "SSE         MSE         RMSE        MAE\n";
    char buf[256];
    for (const ComparisonRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%-21s %-11s %-11.4g ", r.name.c_str(),
                      to_string(r.controller), r.metrics.y_max);
        out << buf;
        if (with_suppression) {
            if (r.suppression_pct) {
                std::snprintf(buf, sizeof buf, "%-10.1f ", *r.suppression_pct);
                out << buf;
            } else {
                out << "-          ";
            }
        }
        std::snprintf(buf, sizeof buf, "%-11.4g %-11.4g %-11.4g %-11.4g\n",
                      r.metrics.cost.sse, r.metrics.cost.mse, r.metrics.cost.rmse,
                      r.metrics.cost.mae);
        out << buf;
    }
    return out.str();
}

std::vector<SweepPoint> run_ur_sweep(const SweepSpec& sweep,
                                     const std::filesystem::path& csv_path) {
    if (sweep.values.empty()) {
        throw validation_error("sweep: values must be nonempty");
    }
    for (double v : sweep.values) {
        if (!(v > 0.0)) {
            throw validation_error("sweep: reduced velocities must be > 0");
        }
    }

    std::vector<SweepPoint> points;
    points.reserve(sweep.values.size());
    for (double ur : sweep.values) {
        ScenarioConfig cfg = sweep.base;
        cfg.controller = Controller::none;  // amplitude curve is free vibration
        const double omega_n = 2.0 * kPi * cfg.plant.U / (ur * cfg.plant.D);
        cfg.plant.K = cfg.plant.m * omega_n * omega_n;
        cfg.name = sweep.base.name + "-ur" + csv::format_number(ur);

        SweepPoint pt;
        pt.Ur = ur;
        try {
            validate_scenario(cfg);
            const SimResult result = simulate(cfg);
            if (result.divergence) {
                pt.diverged = true;
                pt.error = "diverged at t = " +
                           csv::format_number(result.divergence->t) + " (" +
                           result.divergence->field + ")";
            } else {
                const RunMetrics m = compute_run_metrics(cfg, result.series);
                pt.y_max_over_D = m.y_max / cfg.plant.D;
            }
        } catch (const std::exception& e) {
            pt.diverged = true;
            pt.error = e.what();
        }
        points.push_back(std::move(pt));
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            throw validation_error("cannot write '" + csv_path.string() + "'");
        }
        out << "Ur,y_max_over_D\n";
        for (const SweepPoint& pt : points) {
            out << csv::format_number(pt.Ur) << ',';
            if (!pt.diverged) out << csv::format_number(pt.y_max_over_D);
            out << '\n';
        }
    }
    return points;
}

}  // namespace viv
