#pragma once

#include <optional>

#include "viv/plant.hpp"
#include "viv/rbf.hpp"
#include "viv/replay.hpp"
#include "viv/uncertainty.hpp"
#include "viv/wake.hpp"

namespace viv {

struct AccelPair {
    double x_ddot = 0.0;  // [m/s^2]
    double y_ddot = 0.0;  // [m/s^2]
};

/// Newton's second law for the 2DOF cylinder. The control force and the
/// lumped uncertainty act on the transverse channel only:
///   x'' = (f_D - K x) / m
///   y'' = (f_L - K y) / m + b f_C + delta
AccelPair acceleration(const PlantParams& p, const State2DOF& s,
                       const FluidForces& f, double f_C, double delta);

/// Kinetic plus spring energy, 1/2 m (x'^2 + y'^2) + 1/2 K (x^2 + y^2).
double mechanical_energy(const PlantParams& p, const State2DOF& s);

enum class IntegrationMethod { rk4, semi_implicit_euler };

struct IntegratorSettings {
    double dt = 0.005;  // internal step [s]
    int log_every = 10;
    IntegrationMethod method = IntegrationMethod::rk4;
    int control_every = 1;  // controller update cadence, in steps
};

void validate(const IntegratorSettings& s);

/// Source of the fluid forces seen by the cylinder (and by the controller's
/// lift sensor): the wake surrogate, a replayed recording, or nothing.
class ForceModel {
public:
    static ForceModel none() { return ForceModel{}; }
    static ForceModel wake(const WakeParams& wp) {
        ForceModel m;
        m.wake_ = wp;
        return m;
    }
    static ForceModel replay(ReplayTable table) {
        ForceModel m;
        m.replay_ = std::move(table);
        return m;
    }

    bool has_wake() const { return wake_.has_value(); }
    const WakeParams* wake_params() const {
        return wake_ ? &*wake_ : nullptr;
    }

    FluidForces measured(const PlantParams& p, double t, const WakeState& ws,
                         const State2DOF& s) const {
        if (wake_) return forces_on_moving_cylinder(*wake_, p, ws, s);
        if (replay_) return replay_->at(t);
        return {};
    }

private:
    std::optional<WakeParams> wake_;
    std::optional<ReplayTable> replay_;
};

/// Full coupled state advanced by the integrator.
struct SimState {
    State2DOF cyl;
    WakeState wake;
    EstimatorState est;
};

/// Inputs held fixed (zero-order hold) across one integrator step.
struct HeldInputs {
    double u = 0.0;          // applied control force [N]
    double delta_hat = 0.0;  // uncertainty estimate [m/s^2]
    bool estimator_active = false;
    double lambda_D = 0.0;  // estimator gains, used only when active
    double k_SE = 0.0;
};

/// Advances cylinder + wake + estimator by one dt. The control command and
/// the uncertainty estimate stay held; the true uncertainty and the fluid
/// forces are re-evaluated at substage states and times. Throws
/// divergence_error if any component leaves the finite range.
SimState step_coupled(const PlantParams& p, const ForceModel& fm,
                      const UncertaintySpec* unc, const SimState& state,
                      double t, double dt, IntegrationMethod method,
                      const HeldInputs& held);

}  // namespace viv
