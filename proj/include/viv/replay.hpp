#pragma once

#include <string>
#include <vector>

#include "viv/plant.hpp"

namespace viv {

/// Force provider backed by a recorded time series, for replaying externally
/// computed lift/drag histories instead of the wake surrogate.
///
/// Accepted headers: `t,f_L,f_D` (forces in N) or `t,C_L,C_D` (coefficients,
/// converted through the dynamic head 1/2 rho U^2 D at load time). Time must
/// be strictly increasing. Queries are linearly interpolated; queries outside
/// the recorded range clamp to the nearest endpoint and emit a single warning
/// on stderr.
class ReplayTable {
public:
    static ReplayTable load(const std::string& path, const PlantParams& p);

    FluidForces at(double t) const;

    double t_begin() const { return t_.front(); }
    double t_end() const { return t_.back(); }
    std::size_t size() const { return t_.size(); }

private:
    std::vector<double> t_;
    std::vector<double> f_L_;
    std::vector<double> f_D_;
    std::string path_;
    mutable bool warned_out_of_range_ = false;
};

}  // namespace viv
