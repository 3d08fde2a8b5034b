#include "viv/control.hpp"

#include <cmath>
#include <string>

#include "viv/errors.hpp"

namespace viv {

void validate(const ControllerGains& g) {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw validation_error(std::string(field) + " must be > 0");
        }
    };
    auto non_negative = [](double v, const char* field) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw validation_error(std::string(field) + " must be >= 0");
        }
    };
    positive(g.lambda, "gains.lambda");
    positive(g.k_C, "gains.k_C");
    positive(g.gamma, "gains.gamma");
    non_negative(g.k_D, "gains.k_D");
    non_negative(g.lambda_D, "gains.lambda_D");
    non_negative(g.k_SE, "gains.k_SE");
    non_negative(g.t_ctrl_on, "gains.t_ctrl_on");
}

TrackingSignals tracking_signals(const State2DOF& state, const EstimatorState& est,
                                 double y_d, double y_d_dot,
                                 const ControllerGains& g) {
    TrackingSignals sig;
    sig.e = state.y - y_d;
    sig.e_dot = state.y_dot - y_d_dot;
    sig.s = sig.e_dot + g.lambda * sig.e;
    sig.e_D = est.y_hat - state.y;
    sig.e_D_dot = est.y_hat_dot - state.y_dot;
    sig.s_D = sig.e_D_dot + g.lambda_D * sig.e_D;
    return sig;
}

double fel_command(double f, double b, double delta_hat, double y_d_ddot,
                   const TrackingSignals& sig, const ControllerGains& g) {
    if (b == 0.0) throw validation_error("input gain b must be nonzero");
    return (1.0 / b) *
           (-f - delta_hat + y_d_ddot - g.k_C * sig.s - g.lambda * sig.e_dot);
}

double smc_command(double f, double b, double y_d_ddot,
                   const TrackingSignals& sig, const ControllerGains& g) {
    return fel_command(f, b, 0.0, y_d_ddot, sig, g);
}

double lyapunov_simple(double s, std::span<const double> w_hat, double gamma) {
    double ww = 0.0;
    for (double w : w_hat) ww += w * w;
    return 0.5 * (s * s + ww / gamma);
}

double lyapunov_composite(double s, double s_D, double k_D,
                          std::span<const double> w_hat, double gamma) {
    return lyapunov_simple(s, w_hat, gamma) + 0.5 * k_D * s_D * s_D;
}

}  // namespace viv
