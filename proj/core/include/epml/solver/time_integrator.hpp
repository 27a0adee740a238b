#pragma once

#include <stdexcept>
#include <vector>

#include "epml/solver/discretization.hpp"

namespace epml {

/// Raised by the NaN/Inf tripwire during time stepping.
class InstabilityDetected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Classical RK4 stepper with reusable stage storage.
class Rk4Stepper {
public:
    explicit Rk4Stepper(const Discretization& d);

    /// Advances y in place from time t by dt.
    void step(const Discretization& d, double t, double dt, std::vector<double>& y);

    RhsWorkspace& workspace() { return ws_; }

private:
    RhsWorkspace ws_;
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/// Throws InstabilityDetected if any entry of y is NaN or infinite.
void check_finite(const std::vector<double>& y, double t);

}  // namespace epml
