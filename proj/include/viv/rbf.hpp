#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "viv/plant.hpp"

namespace viv {

/// Gaussian radial-basis network estimating the lumped uncertainty from the
/// measured signals X = [y, y_dot, u, f_L]. Centers live in the normalized
/// input space (each raw input divided by its scale); only the output weights
/// adapt online.
struct RbfNetwork {
    int n = 0;
    std::vector<std::array<double, 4>> centers;  // in normalized input space
    std::vector<double> widths;                  // sigma_i > 0
    std::vector<double> weights;                 // W_hat
    std::array<double, 4> input_scales{1, 1, 1, 1};
    double norm_cap = 0.0;  // 0 disables the divergence guard
};

/// Normalization divisors [D, U, K*D, 1/2 rho U^2 D] keep features order-one.
std::array<double, 4> default_input_scales(const PlantParams& p);

/// Centers uniform in [-1, 1]^4, widths uniform in [0.5, 2.0], weights zero.
/// The same seed always yields the same network.
RbfNetwork make_rbf_network(int n, std::uint64_t seed, const PlantParams& p);

void validate(const RbfNetwork& net);

/// Gaussian activations mu_i = exp(-|X~ - c_i|^2 / (2 sigma_i^2)), each in
/// (0, 1], where X~ is the normalized input.
void features_into(const RbfNetwork& net, const std::array<double, 4>& X,
                   std::span<double> out);
std::vector<double> features(const RbfNetwork& net,
                             const std::array<double, 4>& X);

/// Network output W_hat . mu(X)  [m/s^2].
double estimate(const RbfNetwork& net, const std::array<double, 4>& X);

/// Tracking-error update  W_hat += dt * gamma * mu(X) * s  (explicit Euler on
/// the continuous law).
void update_simple(RbfNetwork& net, const std::array<double, 4>& X, double s,
                   double gamma, double dt);

/// Composite update  W_hat += dt * gamma * mu(X) * (s - k_D * s_D); reduces to
/// update_simple at k_D = 0.
void update_composite(RbfNetwork& net, const std::array<double, 4>& X, double s,
                      double s_D, double k_D, double gamma, double dt);

double weight_inf_norm(const RbfNetwork& net);
double weight_sq_norm(const RbfNetwork& net);

/// Transverse state estimate used by composite learning; integrates alongside
/// the plant.
struct EstimatorState {
    double y_hat = 0.0;      // [m]
    double y_hat_dot = 0.0;  // [m/s]
};

/// Estimator acceleration y_hat'' = f + b*u + delta_hat - k_SE*s_D - lambda_D*e_D_dot.
double state_estimator_accel(double f, double b, double u, double delta_hat,
                             double s_D, double e_D_dot, double k_SE,
                             double lambda_D);

}  // namespace viv
