#pragma once

#include <stdexcept>
#include <string>

namespace viv {

/// Bad configuration or out-of-domain input. CLI exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (CSV/JSON). Carries a human-readable location.
class parse_error : public validation_error {
public:
    explicit parse_error(const std::string& what) : validation_error(what) {}
};

/// Simulation state went non-finite. CLI exit code 3.
class divergence_error : public std::runtime_error {
public:
    divergence_error(double t, std::string field)
        : std::runtime_error("state diverged at t = " + std::to_string(t) +
                             " s (field '" + field + "' is non-finite)"),
          t_(t),
          field_(std::move(field)) {}

    double time() const { return t_; }
    const std::string& field() const { return field_; }

private:
    double t_;
    std::string field_;
};

/// The actuator-fault fraction k2 = 1 wipes out the input channel entirely.
class uncontrollable_error : public validation_error {
public:
    explicit uncontrollable_error(const std::string& what) : validation_error(what) {}
};

}  // namespace viv
