#pragma once

#include <vector>

#include "epml/solver/discretization.hpp"

namespace epml {

/// Discrete displacement norm ||u||_H = sqrt(sum_layers sum_c u_c^T (H J) u_c)
/// (the SBP quadrature of the physical L2 norm of the displacement).
double energy_norm(const Discretization& d, const std::vector<double>& y);

/// Discrete mechanical energy: 1/2 [ ||u_t||^2_{rho J H} + strain quadratic
/// with the transformed strain-energy blocks ]. Conserved (to integrator
/// error) for periodic/traction-free closures with sigma = 0; non-increasing
/// with characteristic boundaries.
double mechanical_energy(const Discretization& d, const std::vector<double>& y,
                         RhsWorkspace& ws);

/// Pointwise |u| per layer (for snapshots).
Field2D displacement_magnitude(const Discretization& d,
                               const std::vector<double>& y, int layer);

}  // namespace epml
