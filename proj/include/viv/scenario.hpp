#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "viv/control.hpp"
#include "viv/dynamics.hpp"
#include "viv/plant.hpp"
#include "viv/uncertainty.hpp"
#include "viv/wake.hpp"

namespace viv {

enum class Controller { none, simple, composite, smc, oracle };

const char* to_string(Controller c);
Controller controller_from_string(const std::string& name);

struct NetworkSettings {
    int n = 15;
    std::uint64_t seed = 29;
    double norm_cap = 0.0;  // 0 = no cap
};

struct Timeline {
    double t_end = 200.0;
    double t_ctrl_on = 100.0;
};

/// Resolved initial condition of the coupled state.
struct InitialState {
    double x = 0.0;
    double x_dot = 0.0;
    double y = 0.0;  // defaults to 0.001*D when the wake surrogate is active
    double y_dot = 0.0;
    double q = 0.0;
    double q_dot = 0.0;
};

struct ScenarioConfig {
    std::string name = "scenario";
    PlantParams plant;
    std::optional<WakeParams> wake;           // surrogate, if selected
    std::optional<std::string> replay_path;   // replay file, if selected
    std::optional<UncertaintySpec> uncertainty;
    Controller controller = Controller::none;
    ControllerGains gains;
    NetworkSettings network;
    IntegratorSettings integrator;
    Timeline timeline;
    InitialState initial_state;
    std::string outputs = "runs/scenario";

    bool uses_network() const {
        return controller == Controller::simple ||
               controller == Controller::composite;
    }
    bool has_controller() const { return controller != Controller::none; }
};

/// Named configurations encoding the experiment grid of the study: free
/// vibration and the simple/composite/smc controllers, each togglable
/// between the uncertain and nominal regimes.
bool is_preset(const std::string& name);
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Loads a scenario from a JSON document or file. Unknown keys anywhere in
/// the document are validation errors. Accepts either a bare config object
/// or a run manifest (object with a "config" key).
ScenarioConfig scenario_from_json(const nlohmann::json& j);
ScenarioConfig load_scenario_file(const std::string& path);

/// Exact round-trippable echo of a resolved config.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

/// Cross-field checks (timeline ordering, file existence, gain positivity
/// where the selected controller needs it). Throws validation_error.
void validate_scenario(const ScenarioConfig& cfg);

/// Applies the `--uncertainty on|off` toggle to a config.
void set_uncertainty_enabled(ScenarioConfig& cfg, bool on);

}  // namespace viv
