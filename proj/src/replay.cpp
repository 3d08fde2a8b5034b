#include "viv/replay.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "viv/csv.hpp"
#include "viv/errors.hpp"

namespace viv {

ReplayTable ReplayTable::load(const std::string& path, const PlantParams& p) {
    const csv::Table table = csv::read_table(path);

    int ct = table.column("t");
    int cl = table.column("f_L");
    int cd = table.column("f_D");
    double scale = 1.0;
    if (cl < 0 || cd < 0) {
        cl = table.column("C_L");
        cd = table.column("C_D");
        scale = 0.5 * p.rho * p.U * p.U * p.D;
    }
    if (ct < 0 || cl < 0 || cd < 0) {
        throw parse_error(path + ": header must be t,f_L,f_D or t,C_L,C_D");
    }
    if (table.rows.empty()) {
        throw parse_error(path + ": no data rows");
    }

    ReplayTable r;
    r.path_ = path;
    r.t_.reserve(table.rows.size());
    r.f_L_.reserve(table.rows.size());
    r.f_D_.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (!std::isfinite(row[ct]) || !std::isfinite(row[cl]) ||
            !std::isfinite(row[cd])) {
            throw parse_error(path + ": missing or non-finite value at row " +
                              std::to_string(i + 2));
        }
        if (!r.t_.empty() && row[ct] <= r.t_.back()) {
            throw parse_error(path + ": time not strictly increasing at row " +
                              std::to_string(i + 2));
        }
        r.t_.push_back(row[ct]);
        r.f_L_.push_back(scale * row[cl]);
        r.f_D_.push_back(scale * row[cd]);
    }
    return r;
}

FluidForces ReplayTable::at(double t) const {
    if (t <= t_.front() || t >= t_.back()) {
        if ((t < t_.front() || t > t_.back()) && !warned_out_of_range_) {
            warned_out_of_range_ = true;
            std::cerr << "warning: replay query t = " << t
                      << " outside [" << t_.front() << ", " << t_.back()
                      << "] in " << path_ << "; clamping\n";
        }
        const std::size_t i = (t <= t_.front()) ? 0 : t_.size() - 1;
        return {f_L_[i], f_D_[i]};
    }
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - t_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - t_[lo]) / (t_[hi] - t_[lo]);
    return {f_L_[lo] + w * (f_L_[hi] - f_L_[lo]),
            f_D_[lo] + w * (f_D_[hi] - f_D_[lo])};
}

}  // namespace viv
