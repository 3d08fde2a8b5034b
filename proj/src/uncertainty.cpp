#include "viv/uncertainty.hpp"

#include <cmath>
#include <string>

#include "viv/errors.hpp"

namespace viv {

void validate(const UncertaintySpec& spec) {
    if (spec.t_on < 0.0) {
        throw validation_error("uncertainty.t_on must be >= 0");
    }
    if (!(spec.k2 >= 0.0) || spec.k2 >= 1.0) {
        throw validation_error(
            "uncertainty.k2 must lie in [0, 1); k2 = 1 removes the actuator");
    }
    if (!std::isfinite(spec.k1) || !std::isfinite(spec.d3_amp) ||
        !std::isfinite(spec.d3_omega)) {
        throw validation_error("uncertainty fields must be finite");
    }
}

DeltaParts delta(const UncertaintySpec& spec, double t, const State2DOF& state,
                 double u, const PlantParams& p) {
    DeltaParts parts;
    if (t < spec.t_on) return parts;
    const double d1_force_like = -spec.k1 * p.K * state.y;
    parts.d1 = spec.delta1_scaling == Delta1Scaling::by_mass
                   ? d1_force_like * p.b
                   : d1_force_like;
    parts.d2_u = -spec.k2 * p.b * u;
    parts.d3 = spec.d3_amp * std::sin(spec.d3_omega * t);
    return parts;
}

double effective_input_gain(const UncertaintySpec& spec, const PlantParams& p,
                            double t) {
    if (t < spec.t_on) return p.b;
    if (spec.k2 == 1.0) {
        throw uncontrollable_error(
            "k2 = 1: input gain b + delta2 vanishes, no actuator acts on the "
            "system");
    }
    return (1.0 - spec.k2) * p.b;
}

}  // namespace viv
