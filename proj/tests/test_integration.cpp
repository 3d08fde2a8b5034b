#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "viv/csv.hpp"
#include "viv/errors.hpp"
#include "viv/runner.hpp"

using namespace viv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vivlab_it" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Short composite scenario exercising every signal path.
ScenarioConfig quick_composite(const fs::path& out) {
    ScenarioConfig cfg = preset("paper-composite");
    cfg.timeline.t_end = 20.0;
    cfg.timeline.t_ctrl_on = 8.0;
    cfg.gains.t_ctrl_on = 8.0;
    UncertaintySpec unc;
    unc.t_on = 10.0;
    cfg.uncertainty = unc;
    cfg.outputs = out.string();
    cfg.name = "quick-composite";
    return cfg;
}

}  // namespace

TEST_SUITE("integration") {

TEST_CASE("artifacts and row counts") {
    const fs::path dir = fresh_dir("artifacts");
    ScenarioConfig cfg = quick_composite(dir);
    const RunArtifacts art = run_scenario(cfg);

    CHECK(fs::exists(art.series_csv));
    CHECK(fs::exists(art.network_csv));
    CHECK(fs::exists(art.metrics_json));
    CHECK(fs::exists(art.manifest_json));

    const csv::Table table = csv::read_table(art.series_csv.string());
    const long expected =
        1 + static_cast<long>(cfg.timeline.t_end /
                              (cfg.integrator.dt * cfg.integrator.log_every) +
                              0.5);
    CHECK(static_cast<long>(table.rows.size()) == expected);
    CHECK(table.header.size() == 14);
    CHECK(table.header[0] == "t");
    CHECK(table.header[13] == "V_proxy");

    const json manifest = json::parse(slurp(art.manifest_json));
    CHECK(manifest.at("status") == "ok");
    CHECK(manifest.at("config").at("controller") == "composite");

    // network snapshot has one row per node
    const csv::Table net = csv::read_table(art.network_csv.string());
    CHECK(net.rows.size() == 15);
    CHECK(net.header.front() == "node");
}

TEST_CASE("same config and seed give byte-identical outputs") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    ScenarioConfig ca = quick_composite(a);
    ScenarioConfig cb = quick_composite(b);
    cb.outputs = b.string();
    const RunArtifacts ra = run_scenario(ca);
    const RunArtifacts rb = run_scenario(cb);
    CHECK(slurp(ra.series_csv) == slurp(rb.series_csv));
    CHECK(slurp(ra.network_csv) == slurp(rb.network_csv));
    CHECK(slurp(ra.metrics_json) == slurp(rb.metrics_json));
}

TEST_CASE("a different seed changes the trajectory file") {
    const fs::path a = fresh_dir("seed_a");
    const fs::path b = fresh_dir("seed_b");
    ScenarioConfig ca = quick_composite(a);
    ScenarioConfig cb = quick_composite(b);
    cb.network.seed = ca.network.seed + 1;
    const RunArtifacts ra = run_scenario(ca);
    const RunArtifacts rb = run_scenario(cb);
    CHECK(slurp(ra.series_csv) != slurp(rb.series_csv));
}

TEST_CASE("rerunning from the emitted manifest reproduces the run exactly") {
    const fs::path a = fresh_dir("manifest_a");
    const fs::path b = fresh_dir("manifest_b");
    ScenarioConfig cfg = quick_composite(a);
    const RunArtifacts first = run_scenario(cfg);

    ScenarioConfig replayed = load_scenario_file(first.manifest_json.string());
    replayed.outputs = b.string();
    const RunArtifacts second = run_scenario(replayed);
    CHECK(slurp(first.series_csv) == slurp(second.series_csv));
    CHECK(slurp(first.network_csv) == slurp(second.network_csv));
}

TEST_CASE("signal presence follows the controller") {
    auto fields_of_last_row = [](const ScenarioConfig& cfg) {
        const SimResult r = simulate(cfg);
        REQUIRE(r.ok());
        const fs::path tmp = fresh_dir("presence") / (cfg.name + ".csv");
        write_series_csv(tmp, r.series);
        std::ifstream in(tmp);
        std::string line, last;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (!line.empty()) last = line;
        }
        return csv::split_line(last);
    };
    ScenarioConfig cfg = preset("paper-free");
    cfg.timeline.t_end = 2.0;
    cfg.timeline.t_ctrl_on = 0.0;
    cfg.name = "p-free";

    SUBCASE("free vibration leaves controller columns empty") {
        const auto fields = fields_of_last_row(cfg);
        REQUIRE(fields.size() == 14);
        CHECK(fields[7] == "0.0");  // u is applied (zero), not missing
        CHECK(fields[8] == "0.0");  // delta_true defined, uncertainty off
        CHECK(fields[9].empty());  // delta_hat
        CHECK(fields[10].empty()); // s
        CHECK(fields[11].empty()); // s_D
        CHECK(fields[12].empty()); // W_norm
        CHECK(fields[13].empty()); // V_proxy
    }
    SUBCASE("smc logs the surface but no estimate") {
        cfg.controller = Controller::smc;
        cfg.name = "p-smc";
        const auto fields = fields_of_last_row(cfg);
        CHECK(fields[9].empty());    // delta_hat
        CHECK(!fields[10].empty());  // s
        CHECK(fields[11].empty());   // s_D
        CHECK(fields[12].empty());   // W_norm
        CHECK(!fields[13].empty());  // V_proxy
    }
    SUBCASE("composite logs everything") {
        cfg.controller = Controller::composite;
        cfg.name = "p-comp";
        const auto fields = fields_of_last_row(cfg);
        for (int i = 9; i <= 13; ++i) CHECK(!fields[static_cast<std::size_t>(i)].empty());
    }
    SUBCASE("simple logs no estimation surface") {
        cfg.controller = Controller::simple;
        cfg.name = "p-simple";
        const auto fields = fields_of_last_row(cfg);
        CHECK(!fields[9].empty());
        CHECK(fields[11].empty());
        CHECK(!fields[12].empty());
    }
}

TEST_CASE("degenerate timeline yields the initial sample only") {
    ScenarioConfig cfg = preset("paper-free");
    cfg.timeline.t_end = 0.0;
    cfg.timeline.t_ctrl_on = 0.0;
    const SimResult r = simulate(cfg);
    CHECK(r.series.samples.size() == 1);
    CHECK(r.series.samples[0].t == 0.0);
}

TEST_CASE("no forces, no controller, zero state stays identically zero") {
    json j;
    j["controller"] = "none";
    j["wake"] = "off";
    j["timeline"] = {{"t_end", 3.0}, {"t_ctrl_on", 0.0}};
    const ScenarioConfig cfg = scenario_from_json(j);
    const SimResult r = simulate(cfg);
    REQUIRE(r.ok());
    for (const Sample& s : r.series.samples) {
        CHECK(s.x == 0.0);
        CHECK(s.y == 0.0);
        CHECK(s.y_dot == 0.0);
        CHECK(s.f_L == 0.0);
        CHECK(s.u == 0.0);
    }
}

TEST_CASE("divergence leaves a partial series and a failure manifest") {
    const fs::path dir = fresh_dir("diverge");
    ScenarioConfig cfg = preset("paper-free");
    cfg.name = "boom";
    cfg.outputs = dir.string();
    cfg.timeline.t_end = 50.0;
    cfg.timeline.t_ctrl_on = 0.0;
    UncertaintySpec unc;
    unc.t_on = 0.0;
    unc.d3_amp = 1e305;  // blows up the wake coupling within a few steps
    cfg.uncertainty = unc;

    CHECK_THROWS_AS(run_scenario(cfg), divergence_error);
    CHECK(fs::exists(dir / "series.csv"));
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("status") == "diverged");
    CHECK(manifest.at("divergence").contains("t"));
    CHECK(manifest.at("divergence").contains("field"));
}

TEST_CASE("comparison rejects mismatched shared sections") {
    ScenarioConfig a = preset("paper-free");
    ScenarioConfig b = preset("paper-simple");
    a.timeline.t_end = b.timeline.t_end = 1.0;
    a.timeline.t_ctrl_on = b.timeline.t_ctrl_on = 0.5;
    a.gains.t_ctrl_on = b.gains.t_ctrl_on = 0.5;
    b.plant = make_plant_params(2.0, 2.48, 1.0, 1.0, 0.00667);
    CHECK_THROWS_WITH_AS(run_comparison({a, b}), doctest::Contains("plant.m"),
                         validation_error);
}

TEST_CASE("single-scenario comparison is a baseline-only report") {
    const fs::path dir = fresh_dir("cmp_single");
    ScenarioConfig a = preset("paper-free");
    a.timeline.t_end = 2.0;
    a.timeline.t_ctrl_on = 0.0;
    a.outputs = (dir / "free").string();
    const ComparisonReport report = run_comparison({a});
    CHECK(report.rows.size() == 1);
    REQUIRE(report.baseline_index.has_value());
    CHECK_FALSE(report.rows[0].suppression_pct.has_value());
    CHECK(report.to_text().find("paper-free") != std::string::npos);
}

TEST_CASE("comparison computes suppression against the free baseline") {
    const fs::path dir = fresh_dir("cmp_grid");
    std::vector<ScenarioConfig> grid;
    for (const char* name : {"paper-free", "paper-composite"}) {
        ScenarioConfig cfg = preset(name);
        cfg.timeline.t_end = 30.0;
        cfg.timeline.t_ctrl_on = 15.0;
        cfg.gains.t_ctrl_on = 15.0;
        cfg.outputs = (dir / name).string();
        grid.push_back(cfg);
    }
    const ComparisonReport report =
        run_comparison(grid, dir / "comparison.json");
    REQUIRE(report.rows.size() == 2);
    REQUIRE(report.baseline_index.has_value());
    CHECK(*report.baseline_index == 0);
    REQUIRE(report.rows[1].suppression_pct.has_value());
    const double recomputed =
        100.0 * (1.0 - report.rows[1].metrics.y_max / report.rows[0].metrics.y_max);
    CHECK(*report.rows[1].suppression_pct == doctest::Approx(recomputed).epsilon(1e-12));
    CHECK(fs::exists(dir / "comparison.json"));
}

TEST_CASE("sweep validation and bookkeeping") {
    SweepSpec spec;
    spec.base = preset("paper-free");
    SUBCASE("empty grid is rejected") {
        CHECK_THROWS_AS(run_ur_sweep(spec), validation_error);
    }
    SUBCASE("non-positive reduced velocity is rejected") {
        spec.values = {5.0, -1.0};
        CHECK_THROWS_AS(run_ur_sweep(spec), validation_error);
    }
    SUBCASE("single point emits one pair") {
        spec.values = {5.0};
        spec.base.timeline.t_end = 10.0;
        spec.base.timeline.t_ctrl_on = 0.0;
        const fs::path dir = fresh_dir("sweep");
        const auto points = run_ur_sweep(spec, dir / "curve.csv");
        REQUIRE(points.size() == 1);
        CHECK(points[0].Ur == 5.0);
        CHECK_FALSE(points[0].diverged);
        const csv::Table t = csv::read_table((dir / "curve.csv").string());
        CHECK(t.rows.size() == 1);
    }
}

TEST_CASE("replaying recorded forces approximates the recorded run") {
    // Record a short wake run, then feed its forces back through the replay
    // provider; the y trajectory should track the original closely.
    const fs::path dir = fresh_dir("replay_loop");
    ScenarioConfig rec = preset("paper-free");
    rec.timeline.t_end = 40.0;
    rec.timeline.t_ctrl_on = 0.0;
    rec.integrator.log_every = 1;  // dense record for interpolation
    const SimResult original = simulate(rec);
    REQUIRE(original.ok());

    const fs::path forces_csv = dir / "forces.csv";
    {
        std::ofstream out(forces_csv);
        out << "t,f_L,f_D\n";
        for (const Sample& s : original.series.samples) {
            out << csv::format_number(s.t) << ',' << csv::format_number(s.f_L)
                << ',' << csv::format_number(s.f_D) << '\n';
        }
    }

    ScenarioConfig rep = rec;
    rep.wake.reset();
    rep.replay_path = forces_csv.string();
    rep.initial_state.y = rec.initial_state.y;
    const SimResult replayed = simulate(rep);
    REQUIRE(replayed.ok());

    REQUIRE(replayed.series.samples.size() == original.series.samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < original.series.samples.size(); ++i) {
        worst = std::max(worst, std::abs(replayed.series.samples[i].y -
                                         original.series.samples[i].y));
    }
    CHECK(worst < 1e-3);  // interpolation error only
}

}  // TEST_SUITE
