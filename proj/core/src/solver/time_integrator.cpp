#include "epml/solver/time_integrator.hpp"

#include <cmath>
#include <string>

namespace epml {

Rk4Stepper::Rk4Stepper(const Discretization& d) : ws_(make_workspace(d)) {
    k1_.resize(d.state_size);
    k2_.resize(d.state_size);
    k3_.resize(d.state_size);
    k4_.resize(d.state_size);
    tmp_.resize(d.state_size);
}

void Rk4Stepper::step(const Discretization& d, double t, double dt,
                      std::vector<double>& y) {
    const std::size_t n = d.state_size;
    eval_rhs(d, t, y.data(), k1_.data(), ws_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
    eval_rhs(d, t + 0.5 * dt, tmp_.data(), k2_.data(), ws_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
    eval_rhs(d, t + 0.5 * dt, tmp_.data(), k3_.data(), ws_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    eval_rhs(d, t + dt, tmp_.data(), k4_.data(), ws_);
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += c * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
}

void check_finite(const std::vector<double>& y, double t) {
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw InstabilityDetected(
                "non-finite state detected at t = " + std::to_string(t));
        }
    }
}

}  // namespace epml
