#include "viv/controllability.hpp"

#include <cmath>

#include "viv/errors.hpp"
#include "viv/wake.hpp"

namespace viv {

AffineFields make_affine_fields(const PlantParams& p, const UncertaintySpec* unc,
                                double t, std::function<double(double)> lift_of_x2) {
    const bool unc_on = unc && t >= unc->t_on;
    const double b_eff = unc ? effective_input_gain(*unc, p, t) : p.b;
    const UncertaintySpec spec = unc ? *unc : UncertaintySpec{};
    const PlantParams plant = p;

    AffineFields fields;
    fields.f_field = [plant, spec, unc_on, lift_of_x2](const Vec2& x) -> Vec2 {
        double d1 = 0.0;
        if (unc_on) {
            const double force_like = -spec.k1 * plant.K * x[0];
            d1 = spec.delta1_scaling == Delta1Scaling::by_mass
                     ? force_like * plant.b
                     : force_like;
        }
        const double accel =
            (lift_of_x2(x[1]) - plant.K * x[0]) / plant.m + d1;
        if (!std::isfinite(accel)) {
            throw validation_error("drift field evaluation is non-finite at y = " +
                                   std::to_string(x[0]));
        }
        return {x[1], accel};
    };
    fields.g_field = [b_eff](const Vec2&) -> Vec2 { return {0.0, b_eff}; };
    return fields;
}

namespace {

std::array<std::array<double, 2>, 2> jacobian(const VectorField& field,
                                              const Vec2& x0, double h) {
    std::array<std::array<double, 2>, 2> J{};
    for (int j = 0; j < 2; ++j) {
        Vec2 xp = x0, xm = x0;
        xp[j] += h;
        xm[j] -= h;
        const Vec2 fp = field(xp);
        const Vec2 fm = field(xm);
        for (int i = 0; i < 2; ++i) {
            J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    return J;
}

}  // namespace

Vec2 lie_bracket(const VectorField& f, const VectorField& g, const Vec2& x0,
                 double h) {
    const auto Jf = jacobian(f, x0, h);
    const auto Jg = jacobian(g, x0, h);
    const Vec2 fx = f(x0);
    const Vec2 gx = g(x0);
    Vec2 out{};
    for (int i = 0; i < 2; ++i) {
        out[i] = Jg[i][0] * fx[0] + Jg[i][1] * fx[1]  //
                 - (Jf[i][0] * gx[0] + Jf[i][1] * gx[1]);
    }
    return out;
}

ControllabilityReport controllability_report(const PlantParams& p,
                                             const UncertaintySpec* unc,
                                             const Vec2& x0, double t, double h,
                                             double rank_tol_factor,
                                             double frozen_q) {
    const double b_eff = unc ? effective_input_gain(*unc, p, t) : p.b;

    // Lift frozen at the given wake amplitude: constant over the state, as
    // the bracket sees it during one control instant.
    WakeState ws{frozen_q, 0.0};
    const double f_L = forces_from_wake(WakeParams{}, p, ws).f_L;
    const AffineFields fields =
        make_affine_fields(p, unc, t, [f_L](double) { return f_L; });

    const Vec2 g0 = fields.g_field(x0);
    // The study orients the second column as the drift's action on the input
    // field, which is the negative of lie_bracket's [f, g]; the resulting
    // determinant is -(b + delta2)^2.
    const Vec2 fg = lie_bracket(fields.f_field, fields.g_field, x0, h);
    const Vec2 bracket = {-fg[0], -fg[1]};

    ControllabilityReport r;
    r.M[0][0] = g0[0];
    r.M[1][0] = g0[1];
    r.M[0][1] = bracket[0];
    r.M[1][1] = bracket[1];
    r.det_numeric = r.M[0][0] * r.M[1][1] - r.M[0][1] * r.M[1][0];
    r.det_closed_form = -b_eff * b_eff;

    double frob = 0.0;
    for (const auto& row : r.M) {
        for (double v : row) frob += v * v;
    }
    r.rank_tol = rank_tol_factor * std::sqrt(frob);
    r.rank = std::abs(r.det_numeric) > r.rank_tol ? 2 : (frob > 0.0 ? 1 : 0);
    r.controllable = r.rank == 2;
    return r;
}

}  // namespace viv
