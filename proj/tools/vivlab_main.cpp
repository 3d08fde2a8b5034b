// vivlab: desk-scale study of active suppression of vortex-induced
// vibrations for a 2DOF cylinder. Subcommands: run, compare, sweep,
// controllability, metrics.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "viv/controllability.hpp"
#include "viv/csv.hpp"
#include "viv/errors.hpp"
#include "viv/metrics.hpp"
#include "viv/runner.hpp"

#ifndef VIVLAB_VERSION
#define VIVLAB_VERSION "dev"
#endif

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitDivergence = 3;

struct CommonOpts {
    std::string uncertainty;  // "", "on", "off"
    std::optional<std::uint64_t> seed;
    std::string out;
};

viv::ScenarioConfig load_item(const std::string& item) {
    if (viv::is_preset(item)) return viv::preset(item);
    return viv::load_scenario_file(item);
}

void apply_common(viv::ScenarioConfig& cfg, const CommonOpts& opts,
                  const std::string& out_override) {
    if (opts.uncertainty == "on" || opts.uncertainty == "off") {
        const bool on = opts.uncertainty == "on";
        viv::set_uncertainty_enabled(cfg, on);
        cfg.name += on ? "-unc" : "-nounc";
        cfg.outputs = "runs/" + cfg.name;
    } else if (!opts.uncertainty.empty()) {
        throw viv::validation_error("--uncertainty must be 'on' or 'off'");
    }
    if (opts.seed) cfg.network.seed = *opts.seed;
    if (!out_override.empty()) cfg.outputs = out_override;
}

void print_run_summary(const viv::ScenarioConfig& cfg, const viv::RunArtifacts& art) {
    std::printf("run '%s' (controller %s)\n", cfg.name.c_str(),
                viv::to_string(cfg.controller));
    std::printf("  y_max            = %.6g m  (window [%g, %g] s)\n",
                art.metrics.y_max, art.metrics.amp_window_begin,
                art.metrics.amp_window_end);
    std::printf("  SSE/MSE/RMSE/MAE = %.4g / %.4g / %.4g / %.4g\n",
                art.metrics.cost.sse, art.metrics.cost.mse, art.metrics.cost.rmse,
                art.metrics.cost.mae);
    if (art.metrics.f_y_hz) {
        std::printf("  dominant f_y     = %.4g Hz\n", *art.metrics.f_y_hz);
    }
    if (art.metrics.f_x_hz) {
        std::printf("  dominant f_x     = %.4g Hz\n", *art.metrics.f_x_hz);
    }
    std::printf("  artifacts in %s\n", art.dir.string().c_str());
}

std::vector<double> parse_ur_values(const std::string& text) {
    std::vector<double> values;
    const auto parse_num = [&](const std::string& s) {
        return viv::csv::parse_field(s, "--ur", 0);
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> bits;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            if (colon == std::string::npos) {
                bits.push_back(text.substr(start));
                break;
            }
            bits.push_back(text.substr(start, colon - start));
            start = colon + 1;
        }
        if (bits.size() != 3) {
            throw viv::validation_error("--ur range must be begin:end:step");
        }
        const double begin = parse_num(bits[0]);
        const double end = parse_num(bits[1]);
        const double step = parse_num(bits[2]);
        if (!(step > 0.0)) {
            throw viv::validation_error("--ur step must be > 0");
        }
        for (double v = begin; v <= end + 1e-9; v += step) values.push_back(v);
    } else {
        for (const std::string& s : viv::csv::split_line(text)) {
            values.push_back(parse_num(s));
        }
    }
    return values;
}

int cmd_run(const std::string& item, const CommonOpts& opts) {
    viv::ScenarioConfig cfg = load_item(item);
    apply_common(cfg, opts, opts.out);
    const viv::RunArtifacts art = viv::run_scenario(cfg);
    print_run_summary(cfg, art);
    return 0;
}

int cmd_compare(const std::vector<std::string>& items, const CommonOpts& opts) {
    std::vector<viv::ScenarioConfig> cfgs;
    cfgs.reserve(items.size());
    const std::string base_dir = opts.out.empty() ? "runs/compare" : opts.out;
    for (const std::string& item : items) {
        viv::ScenarioConfig cfg = load_item(item);
        apply_common(cfg, opts, "");
        cfg.outputs = base_dir + "/" + cfg.name;
        cfgs.push_back(std::move(cfg));
    }
    const auto report =
        viv::run_comparison(cfgs, std::filesystem::path(base_dir) / "comparison.json");
    std::cout << report.to_text();
    std::printf("report written to %s/comparison.json\n", base_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& ur_text, const std::string& base_item,
              const CommonOpts& opts) {
    viv::SweepSpec spec;
    spec.values = parse_ur_values(ur_text);
    spec.base = load_item(base_item);
    CommonOpts base_opts = opts;
    apply_common(spec.base, base_opts, "");
    const std::string out =
        opts.out.empty() ? std::string("runs/sweep/ur_sweep.csv") : opts.out;
    std::filesystem::create_directories(
        std::filesystem::path(out).parent_path().empty()
            ? "."
            : std::filesystem::path(out).parent_path());
    const auto points = viv::run_ur_sweep(spec, out);
    std::printf("Ur      y_max/D\n");
    for (const auto& pt : points) {
        if (pt.diverged) {
            std::printf("%-7.3g %s\n", pt.Ur, pt.error.c_str());
        } else {
            std::printf("%-7.3g %.4f\n", pt.Ur, pt.y_max_over_D);
        }
    }
    std::printf("curve written to %s\n", out.c_str());
    return 0;
}

int cmd_controllability(std::optional<double> k2, const std::string& state_text,
                        double t, bool as_json) {
    const viv::PlantParams plant = viv::make_plant_params(1.571, 2.48, 1.0, 1.0,
                                                          0.00667);
    std::optional<viv::UncertaintySpec> unc;
    if (k2) {
        viv::UncertaintySpec spec;
        spec.k2 = *k2;
        spec.t_on = 0.0;  // active at the evaluation time
        unc = spec;
    }
    viv::Vec2 x0{0.0, 0.0};
    if (!state_text.empty()) {
        const auto parts = viv::csv::split_line(state_text);
        if (parts.size() != 2) {
            throw viv::validation_error("--state expects 'y,ydot'");
        }
        x0[0] = viv::csv::parse_field(parts[0], "--state", 0);
        x0[1] = viv::csv::parse_field(parts[1], "--state", 0);
    }
    const auto report = viv::controllability_report(
        plant, unc ? &*unc : nullptr, x0, t);
    if (as_json) {
        json j;
        j["M"] = {{report.M[0][0], report.M[0][1]}, {report.M[1][0], report.M[1][1]}};
        j["det_numeric"] = report.det_numeric;
        j["det_closed_form"] = report.det_closed_form;
        j["rank"] = report.rank;
        j["rank_tol"] = report.rank_tol;
        j["controllable"] = report.controllable;
        std::cout << j.dump(2) << '\n';
    } else {
        const std::string k2_note =
            k2 ? " with k2 = " + std::to_string(*k2) : std::string{};
        std::printf("controllability at state [y, ydot] = [%g, %g]%s\n", x0[0], x0[1],
                    k2_note.c_str());
        std::printf("  M = [ %12.6f  %12.6f ]\n", report.M[0][0], report.M[0][1]);
        std::printf("      [ %12.6f  %12.6f ]\n", report.M[1][0], report.M[1][1]);
        std::printf("  det(M) numeric     = %.8f\n", report.det_numeric);
        std::printf("  det(M) closed form = %.8f\n", report.det_closed_form);
        std::printf("  rank = %d -> %s\n", report.rank,
                    report.controllable ? "controllable" : "NOT controllable");
    }
    return 0;
}

int cmd_metrics(const std::string& path, const std::string& column,
                const std::string& window_text, bool as_json) {
    const viv::csv::Table table = viv::csv::read_table(path);
    const int tc = table.column("t");
    const int vc = table.column(column);
    if (vc < 0) {
        throw viv::validation_error("column '" + column + "' not found in " + path);
    }
    double w_begin = -1e300, w_end = 1e300;
    if (!window_text.empty()) {
        const auto colon = window_text.find(':');
        if (colon == std::string::npos) {
            throw viv::validation_error("--window expects 'begin:end'");
        }
        w_begin = viv::csv::parse_field(window_text.substr(0, colon), "--window", 0);
        w_end = viv::csv::parse_field(window_text.substr(colon + 1), "--window", 0);
    }
    std::vector<double> values;
    std::vector<double> times;
    for (const auto& row : table.rows) {
        const double t = tc >= 0 ? row[static_cast<std::size_t>(tc)] : 0.0;
        if (t < w_begin || t > w_end) continue;
        const double v = row[static_cast<std::size_t>(vc)];
        if (std::isnan(v)) continue;  // signal absent under this controller
        values.push_back(v);
        times.push_back(t);
    }
    const viv::CostReport cost = viv::cost_report(values, 0.0);
    const double peak = viv::max_abs(values);
    std::optional<double> freq;
    if (times.size() >= 2) {
        try {
            freq = viv::dominant_frequency(values, times[1] - times[0]);
        } catch (const viv::validation_error&) {
        }
    }
    if (as_json) {
        json j;
        j["column"] = column;
        j["n_samples"] = cost.n_samples;
        j["max_abs"] = peak;
        j["cost"] = {{"sse", cost.sse},
                     {"mse", cost.mse},
                     {"rmse", cost.rmse},
                     {"mae", cost.mae}};
        j["dominant_freq_hz"] = freq ? json(*freq) : json(nullptr);
        std::cout << j.dump(2) << '\n';
    } else {
        std::printf("%s: column '%s', %zu samples\n", path.c_str(), column.c_str(),
                    cost.n_samples);
        std::printf("  max|.|           = %.6g\n", peak);
        std::printf("  SSE/MSE/RMSE/MAE = %.4g / %.4g / %.4g / %.4g\n", cost.sse,
                    cost.mse, cost.rmse, cost.mae);
        if (freq) std::printf("  dominant freq    = %.5g Hz\n", *freq);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vivlab: active suppression of vortex-induced vibrations, desk scale"};
    app.set_version_flag("--version", VIVLAB_VERSION);
    app.require_subcommand(1);

    CommonOpts opts;

    auto* run = app.add_subcommand("run", "run one scenario (preset name or JSON path)");
    std::string run_item;
    run->add_option("scenario", run_item, "preset or config/manifest JSON")->required();
    run->add_option("--uncertainty", opts.uncertainty, "on|off");
    std::uint64_t seed_value = 0;
    auto* run_seed = run->add_option("--seed", seed_value, "network RNG seed");
    run->add_option("--out", opts.out, "output directory");

    auto* compare = app.add_subcommand("compare", "run a grid and tabulate results");
    std::vector<std::string> compare_items;
    compare->add_option("scenarios", compare_items, "presets or config paths")
        ->required()
        ->expected(-1);
    compare->add_option("--uncertainty", opts.uncertainty, "on|off");
    auto* cmp_seed = compare->add_option("--seed", seed_value, "network RNG seed");
    compare->add_option("--out", opts.out, "report directory");

    auto* sweep = app.add_subcommand("sweep", "free-vibration amplitude vs reduced velocity");
    std::string ur_text = "3:9:1";
    std::string sweep_base = "paper-free";
    sweep->add_option("--ur", ur_text, "range begin:end:step or comma list");
    sweep->add_option("--config", sweep_base, "base preset or config path");
    sweep->add_option("--out", opts.out, "output CSV path");

    auto* ctrb = app.add_subcommand("controllability", "Lie-bracket rank test");
    double k2_value = 0.0;
    auto* k2_opt = ctrb->add_option("--k2", k2_value, "actuator-fault fraction");
    std::string state_text;
    ctrb->add_option("--state", state_text, "evaluation state 'y,ydot'");
    double t_eval = 0.0;
    ctrb->add_option("--t", t_eval, "evaluation time [s]");
    bool ctrb_json = false;
    ctrb->add_flag("--json", ctrb_json, "emit JSON");

    auto* metrics = app.add_subcommand("metrics", "cost metrics of a series CSV");
    std::string metrics_path, metrics_column = "y", metrics_window;
    metrics->add_option("csv", metrics_path, "series CSV path")->required();
    metrics->add_option("--column", metrics_column, "column name (default y)");
    metrics->add_option("--window", metrics_window, "time window begin:end");
    bool metrics_json = false;
    metrics->add_flag("--json", metrics_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*run) {
            if (*run_seed) opts.seed = seed_value;
            return cmd_run(run_item, opts);
        }
        if (*compare) {
            if (*cmp_seed) opts.seed = seed_value;
            return cmd_compare(compare_items, opts);
        }
        if (*sweep) return cmd_sweep(ur_text, sweep_base, opts);
        if (*ctrb) {
            return cmd_controllability(
                *k2_opt ? std::optional<double>(k2_value) : std::nullopt, state_text,
                t_eval, ctrb_json);
        }
        if (*metrics) {
            return cmd_metrics(metrics_path, metrics_column, metrics_window,
                               metrics_json);
        }
    } catch (const viv::divergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const viv::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
