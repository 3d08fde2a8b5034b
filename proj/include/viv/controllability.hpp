#pragma once

#include <array>
#include <functional>

#include "viv/plant.hpp"
#include "viv/uncertainty.hpp"

namespace viv {

using Vec2 = std::array<double, 2>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Drift and input fields of the transverse channel in state-space form,
/// x = [y, y_dot]:
///   f(x) = [x2, (f_L(x2) - K x1)/m + delta1(x1)]
///   g(x) = [0, b + delta2]
struct AffineFields {
    VectorField f_field;
    VectorField g_field;
};

/// Builds the affine fields. `lift_of_x2` maps transverse velocity to lift
/// force; pass a constant for a wake state frozen in time. The uncertainty
/// pointer may be null (nominal plant); `t` selects whether it is active.
AffineFields make_affine_fields(const PlantParams& p, const UncertaintySpec* unc,
                                double t, std::function<double(double)> lift_of_x2);

/// Lie bracket [f, g] = (dg/dx) f - (df/dx) g at x0, with Jacobians by
/// central finite differences of step h.
Vec2 lie_bracket(const VectorField& f, const VectorField& g, const Vec2& x0,
                 double h);

struct ControllabilityReport {
    std::array<std::array<double, 2>, 2> M{};  // columns [g, [f,g]]
    double det_numeric = 0.0;
    double det_closed_form = 0.0;  // -(b + delta2)^2
    double rank_tol = 0.0;
    int rank = 0;
    bool controllable = false;
};

/// Assembles M = [g, [f,g]] at x0, compares the numeric determinant with the
/// closed form, and decides rank against rank_tol_factor * ||M||_F. The lift
/// is the wake surrogate's, frozen at the supplied wake amplitude.
ControllabilityReport controllability_report(const PlantParams& p,
                                             const UncertaintySpec* unc,
                                             const Vec2& x0, double t,
                                             double h = 1e-5,
                                             double rank_tol_factor = 1e-9,
                                             double frozen_q = 2.0);

}  // namespace viv
