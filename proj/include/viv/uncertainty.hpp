#pragma once

#include "viv/plant.hpp"

namespace viv {

/// How the stiffness-fraction term enters the transverse acceleration.
/// `by_mass` treats -k1*K*y as a force and divides by m (so k1 is literally a
/// stiffness error fraction); `verbatim` injects -k1*K*y as an acceleration.
enum class Delta1Scaling { by_mass, verbatim };

/// Lumped uncertainty acting on the transverse channel:
///   delta(t, y, u) = delta1(y) + delta2*u + delta3(t)   [m/s^2]
/// with delta1 = -k1*K*y/m (default scaling), delta2 = -k2*b, and
/// delta3 = d3_amp*sin(d3_omega*t). Inactive (exactly zero) before t_on.
struct UncertaintySpec {
    double k1 = 0.2;            // stiffness error fraction
    double k2 = 0.2;            // actuator ineffectiveness fraction, in [0, 1)
    double d3_amp = 0.5;        // external disturbance amplitude [m/s^2]
    double d3_omega = kPi / 2;  // disturbance angular frequency [rad/s]
    double t_on = 105.0;        // activation time [s]
    Delta1Scaling delta1_scaling = Delta1Scaling::by_mass;
};

struct DeltaParts {
    double d1 = 0.0;    // stiffness-fraction term [m/s^2]
    double d2_u = 0.0;  // actuator-fault term, already multiplied by u [m/s^2]
    double d3 = 0.0;    // external disturbance [m/s^2]

    double total() const { return d1 + d2_u + d3; }
};

void validate(const UncertaintySpec& spec);

/// Evaluates the lumped uncertainty at time t for the given state and applied
/// command. All parts are exactly zero before t_on.
DeltaParts delta(const UncertaintySpec& spec, double t, const State2DOF& state,
                 double u, const PlantParams& p);

/// Input gain as seen by the plant: b before t_on, (1 - k2)*b after.
/// Throws uncontrollable_error when k2 = 1 (no actuator left).
double effective_input_gain(const UncertaintySpec& spec, const PlantParams& p,
                            double t);

}  // namespace viv
