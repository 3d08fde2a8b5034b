#include "viv/wake.hpp"

#include <cmath>
#include <string>

#include "viv/errors.hpp"

namespace viv {

double shedding_frequency(const WakeParams& wp, const PlantParams& p) {
    return 2.0 * kPi * wp.St * p.U / p.D;
}

void validate(const WakeParams& wp) {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw validation_error(std::string(field) + " must be > 0, got " +
                                   std::to_string(v));
        }
    };
    positive(wp.St, "wake.St");
    positive(wp.eps_w, "wake.eps_w");
    positive(wp.C_L0, "wake.C_L0");
    positive(wp.C_D0, "wake.C_D0");
    if (wp.beta_d < 0.0 || !std::isfinite(wp.beta_d)) {
        throw validation_error("wake.beta_d must be >= 0");
    }
    if (wp.C_stall < 0.0 || !std::isfinite(wp.C_stall)) {
        throw validation_error("wake.C_stall must be >= 0");
    }
}

WakeRates wake_derivative(const WakeParams& wp, const PlantParams& p,
                          const WakeState& ws, double y_ddot) {
    const double omega_s = shedding_frequency(wp, p);
    WakeRates r;
    r.q_dot = ws.q_dot;
    r.q_ddot = -wp.eps_w * omega_s * (ws.q * ws.q - 1.0) * ws.q_dot -
               omega_s * omega_s * ws.q + (wp.A_c / p.D) * y_ddot;
    return r;
}

FluidForces forces_from_wake(const WakeParams& wp, const PlantParams& p,
                             const WakeState& ws) {
    const double head = 0.5 * p.rho * p.U * p.U * p.D;  // dynamic head * D
    FluidForces f;
    f.f_L = head * (wp.C_L0 / 2.0) * ws.q;
    f.f_D = head * (wp.C_D0 + wp.beta_d * ws.q * ws.q);
    return f;
}

FluidForces forces_on_moving_cylinder(const WakeParams& wp, const PlantParams& p,
                                      const WakeState& ws, const State2DOF& s) {
    FluidForces f = forces_from_wake(wp, p, ws);
    const double damp = p.rho * p.U * p.D * wp.C_stall;
    f.f_L -= 0.5 * damp * s.y_dot;
    f.f_D -= damp * s.x_dot;
    return f;
}

}  // namespace viv
