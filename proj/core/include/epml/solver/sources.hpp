#pragma once

#include <vector>

#include "epml/solver/discretization.hpp"

namespace epml {

/// Zero state vector sized for the discretization.
std::vector<double> zero_state(const Discretization& d);

/// Sets u1 = u2 = amplitude * exp(-w ((x-xs)^2 + (y-ys)^2)) on every layer;
/// velocities and auxiliaries stay zero.
void gaussian_initial_data(const Discretization& d, const GaussianInitSpec& g,
                           std::vector<double>& y);

/// Moment time function g(t) = exp(-(t-t0)^2 / tau).
double moment_time_function(const MomentSourceSpec& ms, double t);

/// Moment source force density at a point (analytic gradient, all sources).
std::array<double, 2> moment_source(const MomentSourceSpec& ms, double s1,
                                    double s2, double t, double x, double y);

}  // namespace epml
