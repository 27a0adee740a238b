#pragma once

#include <array>
#include <complex>

#include "epml/material.hpp"
#include "epml/mode/kappa.hpp"

namespace epml {

/**
 * Where the PML sends an interface mode s = i*xi: the two roots of
 *   s^2 + (alpha + sigma - i*xi) s - i*alpha*xi = 0,
 * ordered by ascending real part. Both satisfy Re(s) <= 0, with equality
 * only when xi = 0 or sigma = 0. The alpha = 0 and xi = 0 cases are
 * returned in closed form ({0, -sigma + i*xi} and {0, -(alpha+sigma)}).
 */
std::array<Complex, 2> pml_root_map(double xi, double sigma, double alpha);

/**
 * PML dispersion function in the normalized variables: F evaluated at
 * (lambda, k1 / Sx(lambda, epsilon, nu), k2) for a unit direction
 * K = (k1, k2). epsilon = sigma/|k|, nu = alpha/|k|. With epsilon = 0 this
 * is exactly dispersion_F.
 */
Complex pml_dispersion_F(const MaterialParams& m, Complex lambda,
                         std::array<double, 2> K, double epsilon, double nu);

}  // namespace epml
