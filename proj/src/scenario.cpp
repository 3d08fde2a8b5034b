#include "viv/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "viv/errors.hpp"

namespace viv {

using nlohmann::json;

const char* to_string(Controller c) {
    switch (c) {
        case Controller::none: return "none";
        case Controller::simple: return "simple";
        case Controller::composite: return "composite";
        case Controller::smc: return "smc";
        case Controller::oracle: return "oracle";
    }
    return "?";
}

Controller controller_from_string(const std::string& name) {
    if (name == "none") return Controller::none;
    if (name == "simple") return Controller::simple;
    if (name == "composite") return Controller::composite;
    if (name == "smc") return Controller::smc;
    if (name == "oracle") return Controller::oracle;
    throw validation_error("unknown controller '" + name +
                           "' (expected none|simple|composite|smc|oracle)");
}

namespace {

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw validation_error("unknown key '" + key + "' in section '" +
                                   section + "'");
        }
    }
}

double get_num(const json& obj, const std::string& section, const char* key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw validation_error("'" + section + "." + key + "' must be a number");
    }
    return v.get<double>();
}

PlantParams parse_plant(const json& j) {
    check_keys(j, "plant", {"m", "K", "D", "U", "nu", "rho"});
    PlantParams defaults;
    const double m = get_num(j, "plant", "m", defaults.m);
    const double K = get_num(j, "plant", "K", defaults.K);
    const double D = get_num(j, "plant", "D", defaults.D);
    const double U = get_num(j, "plant", "U", defaults.U);
    const double nu = get_num(j, "plant", "nu", defaults.nu);
    const double rho = get_num(j, "plant", "rho", 0.0);  // 0 -> mass-ratio default
    return make_plant_params(m, K, D, U, nu, rho);
}

WakeParams parse_wake_params(const json& j) {
    check_keys(j, "wake",
               {"St", "eps_w", "A_c", "C_L0", "C_D0", "beta_d", "C_stall"});
    WakeParams w;
    w.St = get_num(j, "wake", "St", w.St);
    w.eps_w = get_num(j, "wake", "eps_w", w.eps_w);
    w.A_c = get_num(j, "wake", "A_c", w.A_c);
    w.C_L0 = get_num(j, "wake", "C_L0", w.C_L0);
    w.C_D0 = get_num(j, "wake", "C_D0", w.C_D0);
    w.beta_d = get_num(j, "wake", "beta_d", w.beta_d);
    w.C_stall = get_num(j, "wake", "C_stall", w.C_stall);
    return w;
}

UncertaintySpec parse_uncertainty(const json& j) {
    check_keys(j, "uncertainty",
               {"k1", "k2", "d3_amp", "d3_omega", "t_on", "delta1_scaling"});
    UncertaintySpec u;
    u.k1 = get_num(j, "uncertainty", "k1", u.k1);
    u.k2 = get_num(j, "uncertainty", "k2", u.k2);
    u.d3_amp = get_num(j, "uncertainty", "d3_amp", u.d3_amp);
    u.d3_omega = get_num(j, "uncertainty", "d3_omega", u.d3_omega);
    u.t_on = get_num(j, "uncertainty", "t_on", u.t_on);
    if (j.contains("delta1_scaling")) {
        const std::string s = j.at("delta1_scaling").get<std::string>();
        if (s == "by_mass") {
            u.delta1_scaling = Delta1Scaling::by_mass;
        } else if (s == "verbatim") {
            u.delta1_scaling = Delta1Scaling::verbatim;
        } else {
            throw validation_error(
                "uncertainty.delta1_scaling must be 'by_mass' or 'verbatim'");
        }
    }
    return u;
}

ControllerGains parse_gains(const json& j, double t_ctrl_on) {
    check_keys(j, "gains",
               {"lambda", "k_C", "gamma", "k_D", "lambda_D", "k_SE"});
    ControllerGains g;
    g.lambda = get_num(j, "gains", "lambda", g.lambda);
    g.k_C = get_num(j, "gains", "k_C", g.k_C);
    g.gamma = get_num(j, "gains", "gamma", g.gamma);
    g.k_D = get_num(j, "gains", "k_D", g.k_D);
    g.lambda_D = get_num(j, "gains", "lambda_D", g.lambda_D);
    g.k_SE = get_num(j, "gains", "k_SE", g.k_SE);
    g.t_ctrl_on = t_ctrl_on;
    return g;
}

NetworkSettings parse_network(const json& j) {
    check_keys(j, "network", {"n", "seed", "norm_cap"});
    NetworkSettings n;
    if (j.contains("n")) n.n = j.at("n").get<int>();
    if (j.contains("seed")) n.seed = j.at("seed").get<std::uint64_t>();
    n.norm_cap = get_num(j, "network", "norm_cap", n.norm_cap);
    return n;
}

IntegratorSettings parse_integrator(const json& j) {
    check_keys(j, "integrator", {"dt", "log_every", "method", "control_every"});
    IntegratorSettings s;
    s.dt = get_num(j, "integrator", "dt", s.dt);
    if (j.contains("log_every")) s.log_every = j.at("log_every").get<int>();
    if (j.contains("control_every")) {
        s.control_every = j.at("control_every").get<int>();
    }
    if (j.contains("method")) {
        const std::string m = j.at("method").get<std::string>();
        if (m == "rk4") {
            s.method = IntegrationMethod::rk4;
        } else if (m == "semi_implicit_euler") {
            s.method = IntegrationMethod::semi_implicit_euler;
        } else {
            throw validation_error(
                "integrator.method must be 'rk4' or 'semi_implicit_euler'");
        }
    }
    return s;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& root_in) {
    if (!root_in.is_object()) {
        throw validation_error("scenario document must be a JSON object");
    }
    // A run manifest embeds the config it was produced from.
    const json& root = root_in.contains("config") ? root_in.at("config") : root_in;
    check_keys(root, "(top level)",
               {"name", "plant", "wake", "uncertainty", "controller", "gains",
                "network", "integrator", "timeline", "initial_state", "outputs"});

    ScenarioConfig cfg;
    if (root.contains("name")) cfg.name = root.at("name").get<std::string>();
    cfg.plant = root.contains("plant") ? parse_plant(root.at("plant"))
                                       : make_plant_params(1.571, 2.48, 1.0, 1.0,
                                                           0.00667);

    if (root.contains("wake")) {
        const json& w = root.at("wake");
        if (w.is_string()) {
            if (w.get<std::string>() != "off") {
                throw validation_error("wake must be an object, {\"replay\": path}, or \"off\"");
            }
        } else if (w.is_object() && w.contains("replay")) {
            check_keys(w, "wake", {"replay"});
            cfg.replay_path = w.at("replay").get<std::string>();
        } else if (w.is_object()) {
            cfg.wake = parse_wake_params(w);
        } else {
            throw validation_error("wake must be an object, {\"replay\": path}, or \"off\"");
        }
    } else {
        cfg.wake = WakeParams{};
    }

    if (root.contains("uncertainty")) {
        const json& u = root.at("uncertainty");
        if (u.is_string()) {
            if (u.get<std::string>() != "off") {
                throw validation_error("uncertainty must be an object or \"off\"");
            }
        } else if (u.is_object()) {
            cfg.uncertainty = parse_uncertainty(u);
        } else {
            throw validation_error("uncertainty must be an object or \"off\"");
        }
    }

    if (root.contains("controller")) {
        cfg.controller = controller_from_string(root.at("controller").get<std::string>());
    }

    if (root.contains("timeline")) {
        const json& t = root.at("timeline");
        check_keys(t, "timeline", {"t_end", "t_ctrl_on"});
        cfg.timeline.t_end = get_num(t, "timeline", "t_end", cfg.timeline.t_end);
        cfg.timeline.t_ctrl_on =
            get_num(t, "timeline", "t_ctrl_on", cfg.timeline.t_ctrl_on);
    }

    cfg.gains = root.contains("gains")
                    ? parse_gains(root.at("gains"), cfg.timeline.t_ctrl_on)
                    : ControllerGains{};
    cfg.gains.t_ctrl_on = cfg.timeline.t_ctrl_on;

    if (root.contains("network")) cfg.network = parse_network(root.at("network"));
    if (root.contains("integrator")) {
        cfg.integrator = parse_integrator(root.at("integrator"));
    }

    // Initial condition: seed the transverse axis when the wake is active so
    // the self-excited oscillation has something to grow from.
    cfg.initial_state.y = cfg.wake ? 0.001 * cfg.plant.D : 0.0;
    if (root.contains("initial_state")) {
        const json& s = root.at("initial_state");
        check_keys(s, "initial_state", {"x", "x_dot", "y", "y_dot", "q", "q_dot"});
        cfg.initial_state.x = get_num(s, "initial_state", "x", cfg.initial_state.x);
        cfg.initial_state.x_dot =
            get_num(s, "initial_state", "x_dot", cfg.initial_state.x_dot);
        cfg.initial_state.y = get_num(s, "initial_state", "y", cfg.initial_state.y);
        cfg.initial_state.y_dot =
            get_num(s, "initial_state", "y_dot", cfg.initial_state.y_dot);
        cfg.initial_state.q = get_num(s, "initial_state", "q", cfg.initial_state.q);
        cfg.initial_state.q_dot =
            get_num(s, "initial_state", "q_dot", cfg.initial_state.q_dot);
    }

    if (root.contains("outputs")) {
        cfg.outputs = root.at("outputs").get<std::string>();
    } else {
        cfg.outputs = "runs/" + cfg.name;
    }

    validate_scenario(cfg);
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open scenario file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    ScenarioConfig cfg = scenario_from_json(j);
    if (!j.contains("config") && !j.contains("name")) {
        cfg.name = std::filesystem::path(path).stem().string();
        cfg.outputs = "runs/" + cfg.name;
    }
    return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["plant"] = {{"m", cfg.plant.m}, {"K", cfg.plant.K}, {"D", cfg.plant.D},
                  {"U", cfg.plant.U}, {"nu", cfg.plant.nu}, {"rho", cfg.plant.rho}};
    if (cfg.wake) {
        j["wake"] = {{"St", cfg.wake->St},        {"eps_w", cfg.wake->eps_w},
                     {"A_c", cfg.wake->A_c},      {"C_L0", cfg.wake->C_L0},
                     {"C_D0", cfg.wake->C_D0},    {"beta_d", cfg.wake->beta_d},
                     {"C_stall", cfg.wake->C_stall}};
    } else if (cfg.replay_path) {
        j["wake"] = {{"replay", *cfg.replay_path}};
    } else {
        j["wake"] = "off";
    }
    if (cfg.uncertainty) {
        j["uncertainty"] = {
            {"k1", cfg.uncertainty->k1},
            {"k2", cfg.uncertainty->k2},
            {"d3_amp", cfg.uncertainty->d3_amp},
            {"d3_omega", cfg.uncertainty->d3_omega},
            {"t_on", cfg.uncertainty->t_on},
            {"delta1_scaling",
             cfg.uncertainty->delta1_scaling == Delta1Scaling::by_mass
                 ? "by_mass"
                 : "verbatim"}};
    } else {
        j["uncertainty"] = "off";
    }
    j["controller"] = to_string(cfg.controller);
    j["gains"] = {{"lambda", cfg.gains.lambda},     {"k_C", cfg.gains.k_C},
                  {"gamma", cfg.gains.gamma},       {"k_D", cfg.gains.k_D},
                  {"lambda_D", cfg.gains.lambda_D}, {"k_SE", cfg.gains.k_SE}};
    j["network"] = {{"n", cfg.network.n},
                    {"seed", cfg.network.seed},
                    {"norm_cap", cfg.network.norm_cap}};
    j["integrator"] = {
        {"dt", cfg.integrator.dt},
        {"log_every", cfg.integrator.log_every},
        {"method", cfg.integrator.method == IntegrationMethod::rk4
                       ? "rk4"
                       : "semi_implicit_euler"},
        {"control_every", cfg.integrator.control_every}};
    j["timeline"] = {{"t_end", cfg.timeline.t_end},
                     {"t_ctrl_on", cfg.timeline.t_ctrl_on}};
    j["initial_state"] = {{"x", cfg.initial_state.x},
                          {"x_dot", cfg.initial_state.x_dot},
                          {"y", cfg.initial_state.y},
                          {"y_dot", cfg.initial_state.y_dot},
                          {"q", cfg.initial_state.q},
                          {"q_dot", cfg.initial_state.q_dot}};
    j["outputs"] = cfg.outputs;
    return j;
}

void validate_scenario(const ScenarioConfig& cfg) {
    validate(cfg.plant);
    if (cfg.wake) validate(*cfg.wake);
    if (cfg.uncertainty) validate(*cfg.uncertainty);
    validate(cfg.integrator);
    if (cfg.timeline.t_end < 0.0) {
        throw validation_error("timeline.t_end must be >= 0");
    }
    if (cfg.timeline.t_ctrl_on < 0.0 ||
        cfg.timeline.t_ctrl_on > cfg.timeline.t_end) {
        throw validation_error("timeline requires 0 <= t_ctrl_on <= t_end");
    }
    if (cfg.has_controller()) validate(cfg.gains);
    if (cfg.uses_network() && cfg.network.n < 1) {
        throw validation_error("network.n must be >= 1");
    }
    if (cfg.network.norm_cap < 0.0) {
        throw validation_error("network.norm_cap must be >= 0 (0 disables)");
    }
    if (cfg.replay_path && !std::filesystem::exists(*cfg.replay_path)) {
        throw validation_error("replay file does not exist: '" + *cfg.replay_path +
                               "'");
    }
    for (double v : {cfg.initial_state.x, cfg.initial_state.x_dot,
                     cfg.initial_state.y, cfg.initial_state.y_dot,
                     cfg.initial_state.q, cfg.initial_state.q_dot}) {
        if (!std::isfinite(v)) {
            throw validation_error("initial_state fields must be finite");
        }
    }
    if (cfg.outputs.empty()) {
        throw validation_error("outputs directory must not be empty");
    }
}

void set_uncertainty_enabled(ScenarioConfig& cfg, bool on) {
    if (on) {
        if (!cfg.uncertainty) cfg.uncertainty = UncertaintySpec{};
    } else {
        cfg.uncertainty.reset();
    }
}

bool is_preset(const std::string& name) {
    for (const auto& p : preset_names()) {
        if (p == name) return true;
    }
    return false;
}

std::vector<std::string> preset_names() {
    return {"paper-free", "paper-simple", "paper-composite", "paper-smc"};
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.plant = make_plant_params(1.571, 2.48, 1.0, 1.0, 0.00667);
    cfg.wake = WakeParams{};
    cfg.initial_state.y = 0.001 * cfg.plant.D;
    cfg.outputs = "runs/" + name;
    if (name == "paper-free") {
        cfg.controller = Controller::none;
    } else if (name == "paper-simple") {
        cfg.controller = Controller::simple;
    } else if (name == "paper-composite") {
        cfg.controller = Controller::composite;
    } else if (name == "paper-smc") {
        cfg.controller = Controller::smc;
    } else {
        throw validation_error("unknown preset '" + name + "'");
    }
    validate_scenario(cfg);
    return cfg;
}

}  // namespace viv
