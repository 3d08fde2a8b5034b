#pragma once

#include "viv/plant.hpp"

namespace viv {

/// Van der Pol wake-oscillator surrogate for the vortex street.
///
/// The wake variable q stands in for the fluctuating lift (q = 2*C_L/C_L0);
/// it self-excites to a limit cycle of amplitude ~2 and is entrained by the
/// cylinder's transverse acceleration. C_stall sets the relative-velocity
/// fluid damping felt by the moving cylinder; without it an undamped
/// structure at lock-in has no finite response amplitude.
struct WakeParams {
    double St = 0.183;      // Strouhal number of the stationary cylinder
    double eps_w = 0.3;     // van der Pol nonlinearity strength
    double A_c = 12.0;      // acceleration coupling gain
    double C_L0 = 0.23;     // stationary-cylinder max lift coefficient
    double C_D0 = 1.15;     // stationary-cylinder mean drag coefficient
    double beta_d = 0.2;    // drag fluctuation gain (even in q)
    double C_stall = 1.15;  // relative-velocity damping coefficient
};

struct WakeState {
    double q = 0.0;      // wake variable, dimensionless
    double q_dot = 0.0;  // [1/s]
};

struct WakeRates {
    double q_dot = 0.0;
    double q_ddot = 0.0;
};

/// Shedding angular frequency omega_s = 2*pi*St*U/D [rad/s].
double shedding_frequency(const WakeParams& wp, const PlantParams& p);

void validate(const WakeParams& wp);

/// Wake dynamics q'' + eps_w*omega_s*(q^2 - 1)*q' + omega_s^2*q = (A_c/D)*y''.
WakeRates wake_derivative(const WakeParams& wp, const PlantParams& p,
                          const WakeState& ws, double y_ddot);

/// Forces on a *stationary* cylinder for the current wake state:
///   f_L = 1/2 rho U^2 D (C_L0/2) q
///   f_D = 1/2 rho U^2 D (C_D0 + beta_d q^2)
FluidForces forces_from_wake(const WakeParams& wp, const PlantParams& p,
                             const WakeState& ws);

/// Forces on the *moving* cylinder: the stationary map plus the first-order
/// relative-velocity corrections
///   f_L += -1/2 rho U D C_stall * y_dot
///   f_D += -rho U D C_stall * x_dot
FluidForces forces_on_moving_cylinder(const WakeParams& wp, const PlantParams& p,
                                      const WakeState& ws, const State2DOF& s);

}  // namespace viv
