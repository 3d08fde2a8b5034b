#include "viv/simulate.hpp"

#include <cmath>
#include <limits>

#include "viv/control.hpp"
#include "viv/errors.hpp"

namespace viv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Command {
    double u = 0.0;
    double delta_hat = kNaN;  // NaN when the mode has no estimate to log
};

// Command at one control update. The reference trajectory is regulation to
// zero; the interfaces carry y_d implicitly as (0, 0, 0).
Command compute_command(const ScenarioConfig& cfg, double t, double f,
                        const TrackingSignals& sig, const RbfNetwork* net,
                        const std::array<double, 4>& X) {
    Command c;
    switch (cfg.controller) {
        case Controller::none:
            break;
        case Controller::simple:
        case Controller::composite: {
            c.delta_hat = estimate(*net, X);
            c.u = fel_command(f, cfg.plant.b, c.delta_hat, 0.0, sig, cfg.gains);
            break;
        }
        case Controller::smc:
            c.u = smc_command(f, cfg.plant.b, 0.0, sig, cfg.gains);
            break;
        case Controller::oracle: {
            // Cancel the true uncertainty exactly. The actuator-fault part
            // depends on u itself, so solve the affine relation through the
            // effective input gain instead of iterating.
            double d13 = 0.0;
            double b_eff = cfg.plant.b;
            if (cfg.uncertainty) {
                State2DOF st;
                st.y = sig.e;  // y_d = 0
                const DeltaParts parts =
                    delta(*cfg.uncertainty, t, st, 0.0, cfg.plant);
                d13 = parts.d1 + parts.d3;
                b_eff = effective_input_gain(*cfg.uncertainty, cfg.plant, t);
            }
            c.u = (-f - d13 - cfg.gains.k_C * sig.s -
                   cfg.gains.lambda * sig.e_dot) /
                  b_eff;
            c.delta_hat = d13 - (cfg.uncertainty
                                     ? cfg.uncertainty->k2 * cfg.plant.b * c.u *
                                           (t >= cfg.uncertainty->t_on ? 1.0 : 0.0)
                                     : 0.0);
            break;
        }
    }
    return c;
}

}  // namespace

std::vector<double> TimeSeries::column(double Sample::* field) const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(s.*field);
    return out;
}

std::vector<double> TimeSeries::window(double Sample::* field, double t_begin,
                                       double t_end) const {
    std::vector<double> out;
    for (const Sample& s : samples) {
        if (s.t >= t_begin && s.t <= t_end) out.push_back(s.*field);
    }
    return out;
}

SimResult simulate(const ScenarioConfig& cfg) {
    validate_scenario(cfg);

    const double dt = cfg.integrator.dt;
    const long n_steps = static_cast<long>(std::floor(cfg.timeline.t_end / dt + 1e-9));

    ForceModel force_model = ForceModel::none();
    if (cfg.wake) {
        force_model = ForceModel::wake(*cfg.wake);
    } else if (cfg.replay_path) {
        force_model = ForceModel::replay(ReplayTable::load(*cfg.replay_path, cfg.plant));
    }

    RbfNetwork net;
    if (cfg.uses_network()) {
        net = make_rbf_network(cfg.network.n, cfg.network.seed, cfg.plant);
        net.norm_cap = cfg.network.norm_cap;
    }

    SimState state;
    state.cyl = {cfg.initial_state.x, cfg.initial_state.x_dot,
                 cfg.initial_state.y, cfg.initial_state.y_dot};
    state.wake = {cfg.initial_state.q, cfg.initial_state.q_dot};
    state.est = {state.cyl.y, state.cyl.y_dot};

    const UncertaintySpec* unc = cfg.uncertainty ? &*cfg.uncertainty : nullptr;

    SimResult result;
    result.series.controller = cfg.controller;
    result.series.dt_sample = dt * cfg.integrator.log_every;
    result.series.samples.reserve(
        static_cast<std::size_t>(n_steps / cfg.integrator.log_every + 2));

    double u_applied = 0.0;
    double delta_hat_held = 0.0;
    bool have_command = false;

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const bool active = cfg.has_controller() && t >= cfg.timeline.t_ctrl_on;
        const bool control_step =
            !have_command || (k % cfg.integrator.control_every == 0);

        const FluidForces forces =
            force_model.measured(cfg.plant, t, state.wake, state.cyl);
        const double f = (forces.f_L - cfg.plant.K * state.cyl.y) / cfg.plant.m;
        const TrackingSignals sig =
            tracking_signals(state.cyl, state.est, 0.0, 0.0, cfg.gains);
        const std::array<double, 4> X = {state.cyl.y, state.cyl.y_dot, u_applied,
                                         forces.f_L};

        Command cmd;  // u = 0, delta_hat = NaN before activation
        if (active && control_step) {
            cmd = compute_command(cfg, t, f, sig,
                                  cfg.uses_network() ? &net : nullptr, X);
            u_applied = cmd.u;
            delta_hat_held = std::isnan(cmd.delta_hat) ? 0.0 : cmd.delta_hat;
            have_command = true;
        } else if (active) {
            cmd.u = u_applied;
            cmd.delta_hat = cfg.uses_network() || cfg.controller == Controller::oracle
                                ? delta_hat_held
                                : kNaN;
        } else {
            u_applied = 0.0;
            delta_hat_held = 0.0;
            if (cfg.uses_network() || cfg.controller == Controller::oracle) {
                cmd.delta_hat = 0.0;
            }
        }

        if (k % cfg.integrator.log_every == 0) {
            Sample row;
            row.t = t;
            row.x = state.cyl.x;
            row.x_dot = state.cyl.x_dot;
            row.y = state.cyl.y;
            row.y_dot = state.cyl.y_dot;
            row.f_L = forces.f_L;
            row.f_D = forces.f_D;
            row.u = cmd.u;
            row.delta_true =
                unc ? delta(*unc, t, state.cyl, cmd.u, cfg.plant).total() : 0.0;
            row.delta_hat = cmd.delta_hat;
            row.s = cfg.has_controller() ? sig.s : kNaN;
            row.s_D = cfg.controller == Controller::composite ? sig.s_D : kNaN;
            row.W_norm = cfg.uses_network() ? weight_inf_norm(net) : kNaN;
            switch (cfg.controller) {
                case Controller::none:
                    row.V_proxy = kNaN;
                    break;
                case Controller::simple:
                    row.V_proxy = lyapunov_simple(sig.s, net.weights, cfg.gains.gamma);
                    break;
                case Controller::composite:
                    row.V_proxy = lyapunov_composite(sig.s, sig.s_D, cfg.gains.k_D,
                                                     net.weights, cfg.gains.gamma);
                    break;
                case Controller::smc:
                case Controller::oracle:
                    row.V_proxy = 0.5 * sig.s * sig.s;
                    break;
            }
            result.series.samples.push_back(row);
        }

        if (k == n_steps) break;

        // Weight adaptation runs at the control cadence, frozen before
        // activation. Explicit Euler on the continuous law, signals taken at
        // the step start.
        if (active && control_step && cfg.uses_network()) {
            const double dt_eff = dt * cfg.integrator.control_every;
            if (cfg.controller == Controller::simple) {
                update_simple(net, X, sig.s, cfg.gains.gamma, dt_eff);
            } else {
                update_composite(net, X, sig.s, sig.s_D, cfg.gains.k_D,
                                 cfg.gains.gamma, dt_eff);
            }
        }

        HeldInputs held;
        held.u = u_applied;
        held.delta_hat = delta_hat_held;
        held.estimator_active = active && cfg.controller == Controller::composite;
        held.lambda_D = cfg.gains.lambda_D;
        held.k_SE = cfg.gains.k_SE;

        try {
            state = step_coupled(cfg.plant, force_model, unc, state, t, dt,
                                 cfg.integrator.method, held);
        } catch (const divergence_error& e) {
            result.divergence = DivergenceInfo{e.time(), e.field()};
            break;
        }
        if (!held.estimator_active) {
            state.est = {state.cyl.y, state.cyl.y_dot};
        }
    }

    if (cfg.uses_network()) result.network = net;
    return result;
}

}  // namespace viv
