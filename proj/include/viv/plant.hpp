#pragma once

#include <numbers>

namespace viv {

/// Physical parameters of the elastically mounted cylinder and the free stream.
/// All values are SI. `b` is the control input gain of the transverse channel
/// and must equal 1/m; use make_plant_params() or refresh_input_gain() to keep
/// the pair consistent.
struct PlantParams {
    double m = 1.571;      // cylinder mass [kg]
    double K = 2.48;       // spring stiffness, both axes [N/m]
    double D = 1.0;        // cylinder diameter [m]
    double U = 1.0;        // free-stream speed [m/s]
    double nu = 0.00667;   // kinematic viscosity [m^2/s]
    double rho = 0.78135;  // fluid density [kg/m^3]
    double b = 1.0 / 1.571;  // input gain, 1/m [1/kg]
};

/// Dimensionless numbers and frequencies implied by PlantParams.
struct DerivedQuantities {
    double f_n = 0.0;      // natural frequency sqrt(K/m)/2pi [Hz]
    double omega_n = 0.0;  // natural frequency [rad/s]
    double Re = 0.0;       // Reynolds number U*D/nu
    double Ur = 0.0;       // reduced velocity U/(f_n*D)
    double m_star = 0.0;   // mass ratio 4m/(rho*pi*D^2)
};

/// Cylinder position/velocity in the streamwise (x) and transverse (y) axes.
struct State2DOF {
    double x = 0.0;      // [m]
    double x_dot = 0.0;  // [m/s]
    double y = 0.0;      // [m]
    double y_dot = 0.0;  // [m/s]
};

/// Fluid forces on the cylinder: lift acts transverse, drag streamwise.
struct FluidForces {
    double f_L = 0.0;  // [N]
    double f_D = 0.0;  // [N]
};

/// Density implied by a target mass ratio: rho = 4m/(m_star*pi*D^2).
/// Throws validation_error on non-positive input.
double default_rho(double m, double m_star, double D);

/// Builds a consistent parameter set (b = 1/m, rho defaulted from the mass
/// ratio when not given) and validates positivity.
PlantParams make_plant_params(double m, double K, double D, double U, double nu,
                              double rho = 0.0);

/// Recomputes b after direct field edits (e.g. a stiffness sweep).
void refresh_input_gain(PlantParams& p);

/// Throws validation_error naming the offending field.
void validate(const PlantParams& p);

DerivedQuantities derive_quantities(const PlantParams& p);

inline constexpr double kPi = std::numbers::pi;

}  // namespace viv
