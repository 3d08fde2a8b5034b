#include "viv/plant.hpp"

#include <cmath>
#include <string>

#include "viv/errors.hpp"

namespace viv {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw validation_error(std::string(field) + " must be > 0, got " +
                               std::to_string(v));
    }
}

}  // namespace

double default_rho(double m, double m_star, double D) {
    require_positive(m, "m");
    require_positive(m_star, "m_star");
    require_positive(D, "D");
    return 4.0 * m / (m_star * kPi * D * D);
}

PlantParams make_plant_params(double m, double K, double D, double U, double nu,
                              double rho) {
    PlantParams p;
    p.m = m;
    p.K = K;
    p.D = D;
    p.U = U;
    p.nu = nu;
    p.rho = rho > 0.0 ? rho : default_rho(m, 2.56, D);
    p.b = 1.0 / m;
    validate(p);
    return p;
}

void refresh_input_gain(PlantParams& p) { p.b = 1.0 / p.m; }

void validate(const PlantParams& p) {
    require_positive(p.m, "plant.m");
    require_positive(p.K, "plant.K");
    require_positive(p.D, "plant.D");
    require_positive(p.U, "plant.U");
    require_positive(p.nu, "plant.nu");
    require_positive(p.rho, "plant.rho");
    if (std::abs(p.b * p.m - 1.0) > 1e-12) {
        throw validation_error("plant.b must equal 1/m (b*m = " +
                               std::to_string(p.b * p.m) + ")");
    }
}

DerivedQuantities derive_quantities(const PlantParams& p) {
    validate(p);
    DerivedQuantities d;
    d.omega_n = std::sqrt(p.K / p.m);
    d.f_n = d.omega_n / (2.0 * kPi);
    d.Re = p.U * p.D / p.nu;
    d.Ur = p.U / (d.f_n * p.D);
    d.m_star = 4.0 * p.m / (p.rho * kPi * p.D * p.D);
    return d;
}

}  // namespace viv
