#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "epml/material.hpp"

namespace epml {

using Complex = std::complex<double>;

/// Thrown by kinematics() when the two body-wave eigenvalues coincide and
/// the group velocity of a single branch is ill-defined.
class DegenerateBranch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class WaveBranch {
    QuasiP,  // larger eigenvalue -s^2
    QuasiS,  // smaller eigenvalue
};

/**
 * Dispersion function F(s, k) = det(s^2 I + P(k)) evaluated through the
 * expanded quartic in s. Accepts complex wavenumbers so the same expression
 * serves the PML-stretched variant.
 */
Complex dispersion_F(const MaterialParams& m, Complex s, Complex kx, Complex ky);

/// Eigenvalues -s1^2 >= -s2^2 > 0 of P(k), via the closed-form quadratic
/// formula on the dispersion quartic. Requires |k| > 0.
std::array<double, 2> body_wave_eigenvalues(const MaterialParams& m, double kx,
                                            double ky);

struct KinematicQuantities {
    std::array<double, 2> K;   // unit propagation direction
    std::array<double, 2> Vp;  // phase velocity (omega/kx, omega/ky)
    std::array<double, 2> S;   // slowness (kx/omega, ky/omega)
    std::array<double, 2> Vg;  // group velocity (d omega / d k)
    double omega;
};

/**
 * Phase/slowness/group-velocity quantities for one branch at wave vector k.
 * The group velocity comes from implicit differentiation of F(i*omega, k) = 0:
 * d omega / d k_i = -(dF/dk_i) / (dF/d omega).
 */
KinematicQuantities kinematics(const MaterialParams& m, double kx, double ky,
                               WaveBranch branch);

struct GeometricCheckEntry {
    double angle;       // radians
    WaveBranch branch;
    double vpx_vgx;     // sign decides admissibility
    bool flagged;       // vpx_vgx < 0
};

struct GeometricCheckReport {
    std::vector<GeometricCheckEntry> entries;
    bool admissible;  // true iff no entry flagged
};

/**
 * Sweeps n_angles directions of the unit circle and reports the sign of
 * Vpx*Vgx per branch. A negative product at any angle means the medium
 * admits high-frequency growing modes inside an x-direction PML.
 * Angles are offset by half a step so the axes are never sampled exactly.
 */
GeometricCheckReport geometric_stability_check(const MaterialParams& m,
                                               int n_angles);

}  // namespace epml
