#include "viv/rbf.hpp"

#include <cmath>
#include <random>
#include <string>

#include "viv/errors.hpp"

namespace viv {

namespace {

// Uniform in [0, 1) from the raw 64-bit stream; independent of the standard
// library's distribution internals so seeded runs are reproducible everywhere.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace

std::array<double, 4> default_input_scales(const PlantParams& p) {
    return {p.D, p.U, p.K * p.D, 0.5 * p.rho * p.U * p.U * p.D};
}

RbfNetwork make_rbf_network(int n, std::uint64_t seed, const PlantParams& p) {
    if (n < 1) throw validation_error("network.n must be >= 1");
    RbfNetwork net;
    net.n = n;
    net.input_scales = default_input_scales(p);
    net.centers.resize(static_cast<std::size_t>(n));
    net.widths.resize(static_cast<std::size_t>(n));
    net.weights.assign(static_cast<std::size_t>(n), 0.0);
    std::mt19937_64 rng(seed);
    for (auto& c : net.centers) {
        for (double& v : c) v = uniform_in(rng, -1.0, 1.0);
    }
    for (double& w : net.widths) w = uniform_in(rng, 0.5, 2.0);
    return net;
}

void validate(const RbfNetwork& net) {
    if (net.n < 1) throw validation_error("network.n must be >= 1");
    const auto count = static_cast<std::size_t>(net.n);
    if (net.centers.size() != count || net.widths.size() != count ||
        net.weights.size() != count) {
        throw validation_error("network arrays must all have n entries");
    }
    for (double w : net.widths) {
        if (!(w > 0.0)) throw validation_error("network widths must be > 0");
    }
    for (double s : net.input_scales) {
        if (!(s > 0.0)) throw validation_error("network input_scales must be > 0");
    }
    for (double w : net.weights) {
        if (!std::isfinite(w)) throw validation_error("network weights must be finite");
    }
}

void features_into(const RbfNetwork& net, const std::array<double, 4>& X,
                   std::span<double> out) {
    std::array<double, 4> xn;
    for (int j = 0; j < 4; ++j) xn[j] = X[j] / net.input_scales[j];
    for (std::size_t i = 0; i < out.size(); ++i) {
        double d2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double d = xn[j] - net.centers[i][j];
            d2 += d * d;
        }
        out[i] = std::exp(-d2 / (2.0 * net.widths[i] * net.widths[i]));
    }
}

std::vector<double> features(const RbfNetwork& net,
                             const std::array<double, 4>& X) {
    std::vector<double> mu(static_cast<std::size_t>(net.n));
    features_into(net, X, mu);
    return mu;
}

double estimate(const RbfNetwork& net, const std::array<double, 4>& X) {
    std::array<double, 4> xn;
    for (int j = 0; j < 4; ++j) xn[j] = X[j] / net.input_scales[j];
    double sum = 0.0;
    for (std::size_t i = 0; i < net.weights.size(); ++i) {
        double d2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double d = xn[j] - net.centers[i][j];
            d2 += d * d;
        }
        sum += net.weights[i] *
               std::exp(-d2 / (2.0 * net.widths[i] * net.widths[i]));
    }
    return sum;
}

namespace {

void apply_norm_cap(RbfNetwork& net) {
    if (net.norm_cap <= 0.0) return;
    const double norm = std::sqrt(weight_sq_norm(net));
    if (norm > net.norm_cap) {
        const double scale = net.norm_cap / norm;
        for (double& w : net.weights) w *= scale;
    }
}

}  // namespace

void update_simple(RbfNetwork& net, const std::array<double, 4>& X, double s,
                   double gamma, double dt) {
    update_composite(net, X, s, 0.0, 0.0, gamma, dt);
}

void update_composite(RbfNetwork& net, const std::array<double, 4>& X, double s,
                      double s_D, double k_D, double gamma, double dt) {
    if (!(gamma > 0.0)) throw validation_error("gains.gamma must be > 0");
    if (k_D < 0.0) throw validation_error("gains.k_D must be >= 0");
    std::array<double, 4> xn;
    for (int j = 0; j < 4; ++j) xn[j] = X[j] / net.input_scales[j];
    const double drive = dt * gamma * (s - k_D * s_D);
    for (std::size_t i = 0; i < net.weights.size(); ++i) {
        double d2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double d = xn[j] - net.centers[i][j];
            d2 += d * d;
        }
        net.weights[i] +=
            drive * std::exp(-d2 / (2.0 * net.widths[i] * net.widths[i]));
    }
    apply_norm_cap(net);
}

double weight_inf_norm(const RbfNetwork& net) {
    double m = 0.0;
    for (double w : net.weights) m = std::max(m, std::abs(w));
    return m;
}

double weight_sq_norm(const RbfNetwork& net) {
    double s = 0.0;
    for (double w : net.weights) s += w * w;
    return s;
}

double state_estimator_accel(double f, double b, double u, double delta_hat,
                             double s_D, double e_D_dot, double k_SE,
                             double lambda_D) {
    return f + b * u + delta_hat - k_SE * s_D - lambda_D * e_D_dot;
}

}  // namespace viv
