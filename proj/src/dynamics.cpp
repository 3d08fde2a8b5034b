#include "viv/dynamics.hpp"

#include <array>
#include <cmath>

#include "viv/errors.hpp"

namespace viv {

AccelPair acceleration(const PlantParams& p, const State2DOF& s,
                       const FluidForces& f, double f_C, double delta) {
    AccelPair a;
    a.x_ddot = (f.f_D - p.K * s.x) / p.m;
    a.y_ddot = (f.f_L - p.K * s.y) / p.m + p.b * f_C + delta;
    return a;
}

double mechanical_energy(const PlantParams& p, const State2DOF& s) {
    return 0.5 * p.m * (s.x_dot * s.x_dot + s.y_dot * s.y_dot) +
           0.5 * p.K * (s.x * s.x + s.y * s.y);
}

void validate(const IntegratorSettings& s) {
    if (!(s.dt > 0.0)) throw validation_error("integrator.dt must be > 0");
    if (s.log_every < 1) throw validation_error("integrator.log_every must be >= 1");
    if (s.control_every < 1) {
        throw validation_error("integrator.control_every must be >= 1");
    }
}

namespace {

using Vec8 = std::array<double, 8>;  // x x' y y' q q' yh yh'

Vec8 pack(const SimState& s) {
    return {s.cyl.x,  s.cyl.x_dot,     s.cyl.y,      s.cyl.y_dot,
            s.wake.q, s.wake.q_dot,    s.est.y_hat,  s.est.y_hat_dot};
}

SimState unpack(const Vec8& v) {
    SimState s;
    s.cyl = {v[0], v[1], v[2], v[3]};
    s.wake = {v[4], v[5]};
    s.est = {v[6], v[7]};
    return s;
}

Vec8 derivative(const PlantParams& p, const ForceModel& fm,
                const UncertaintySpec* unc, const Vec8& v, double t,
                const HeldInputs& held) {
    const SimState s = unpack(v);
    const FluidForces forces = fm.measured(p, t, s.wake, s.cyl);
    const double delta_true =
        unc ? delta(*unc, t, s.cyl, held.u, p).total() : 0.0;
    const AccelPair acc = acceleration(p, s.cyl, forces, held.u, delta_true);

    WakeRates wr;
    if (const WakeParams* wp = fm.wake_params()) {
        wr = wake_derivative(*wp, p, s.wake, acc.y_ddot);
    }

    double est_vel = acc.y_ddot;
    double est_rate = s.cyl.y_dot;
    if (held.estimator_active) {
        const double f = (forces.f_L - p.K * s.cyl.y) / p.m;
        const double e_D_dot = s.est.y_hat_dot - s.cyl.y_dot;
        const double s_D = e_D_dot + held.lambda_D * (s.est.y_hat - s.cyl.y);
        est_vel = state_estimator_accel(f, p.b, held.u, held.delta_hat, s_D,
                                        e_D_dot, held.k_SE, held.lambda_D);
        est_rate = s.est.y_hat_dot;
    }

    return {s.cyl.x_dot, acc.x_ddot, s.cyl.y_dot, acc.y_ddot,
            wr.q_dot,    wr.q_ddot,  est_rate,    est_vel};
}

constexpr const char* kFieldNames[8] = {"x", "x_dot", "y",     "y_dot",
                                        "q", "q_dot", "y_hat", "y_hat_dot"};

}  // namespace

SimState step_coupled(const PlantParams& p, const ForceModel& fm,
                      const UncertaintySpec* unc, const SimState& state,
                      double t, double dt, IntegrationMethod method,
                      const HeldInputs& held) {
    const Vec8 v0 = pack(state);
    Vec8 v1{};

    if (method == IntegrationMethod::rk4) {
        const Vec8 k1 = derivative(p, fm, unc, v0, t, held);
        Vec8 tmp;
        for (int i = 0; i < 8; ++i) tmp[i] = v0[i] + 0.5 * dt * k1[i];
        const Vec8 k2 = derivative(p, fm, unc, tmp, t + 0.5 * dt, held);
        for (int i = 0; i < 8; ++i) tmp[i] = v0[i] + 0.5 * dt * k2[i];
        const Vec8 k3 = derivative(p, fm, unc, tmp, t + 0.5 * dt, held);
        for (int i = 0; i < 8; ++i) tmp[i] = v0[i] + dt * k3[i];
        const Vec8 k4 = derivative(p, fm, unc, tmp, t + dt, held);
        for (int i = 0; i < 8; ++i) {
            v1[i] = v0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    } else {
        // Semi-implicit Euler: velocities first, then positions with the new
        // velocities.
        const Vec8 d = derivative(p, fm, unc, v0, t, held);
        for (int i : {1, 3, 5, 7}) v1[i] = v0[i] + dt * d[i];
        for (int i : {0, 2, 4, 6}) v1[i] = v0[i] + dt * v1[i + 1];
    }

    for (int i = 0; i < 8; ++i) {
        if (!std::isfinite(v1[i])) {
            throw divergence_error(t + dt, kFieldNames[i]);
        }
    }
    return unpack(v1);
}

}  // namespace viv
