#pragma once

#include <span>

#include "viv/plant.hpp"
#include "viv/rbf.hpp"

namespace viv {

struct ControllerGains {
    double lambda = 12.0;    // sliding-surface slope [1/s]
    double k_C = 1.5;        // control gain [1/s]
    double gamma = 1.5;      // learning rate
    double k_D = 6.0;        // composite coupling
    double lambda_D = 0.01;  // estimation sliding-surface slope [1/s]
    double k_SE = 0.01;      // state-estimation gain [1/s]
    double t_ctrl_on = 100.0;  // activation time [s]
};

void validate(const ControllerGains& g);

/// Tracking and state-estimation errors with their sliding surfaces:
///   s = e_dot + lambda*e,   s_D = e_D_dot + lambda_D*e_D.
struct TrackingSignals {
    double e = 0.0;        // y - y_d [m]
    double e_dot = 0.0;    // [m/s]
    double s = 0.0;        // [m/s]
    double e_D = 0.0;      // y_hat - y [m]
    double e_D_dot = 0.0;  // [m/s]
    double s_D = 0.0;      // [m/s]
};

TrackingSignals tracking_signals(const State2DOF& state, const EstimatorState& est,
                                 double y_d, double y_d_dot,
                                 const ControllerGains& g);

/// Feedback-error-learning command
///   u = (1/b) * (-f - delta_hat + y_d_ddot - k_C*s - lambda*e_dot)
/// where f is the measured transverse drift (f_L - K*y)/m.
/// Throws validation_error on b = 0.
double fel_command(double f, double b, double delta_hat, double y_d_ddot,
                   const TrackingSignals& sig, const ControllerGains& g);

/// Sliding-mode baseline: fel_command with the learned term removed.
double smc_command(double f, double b, double y_d_ddot,
                   const TrackingSignals& sig, const ControllerGains& g);

/// Diagnostic Lyapunov value 1/2 (s^2 + W.W/gamma). The true parameter error
/// is unknowable, so the logged value substitutes W_hat; see README.
double lyapunov_simple(double s, std::span<const double> w_hat, double gamma);

/// Composite variant 1/2 (s^2 + k_D s_D^2 + W.W/gamma), same substitution.
double lyapunov_composite(double s, double s_D, double k_D,
                          std::span<const double> w_hat, double gamma);

}  // namespace viv
