#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "epml/material.hpp"

namespace epml {

using Complex = std::complex<double>;

/// Thrown by pml_stretch_value when s == -alpha.
class PoleAtMinusAlpha : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a kappa root lies on (or numerically touches) the imaginary
/// axis, so the +/- classification is undefined. Indicates Re(s) <= 0 input
/// or a degenerate root configuration.
class SignClassificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One PML stretch sample: damping value sigma >= 0 and CFS alpha >= 0.
struct PmlStretch {
    double sigma = 0.0;
    double alpha = 0.0;
};

/// Sx(s) = 1 + sigma / (alpha + s); nonzero whenever Re(s) > 0.
Complex pml_stretch_value(Complex s, const PmlStretch& stretch);

struct KappaRoot {
    Complex kappa;
    std::array<Complex, 2> phi;  // eigenvector of (s^2 I + P(kx, kappa))
};

/// The four solutions of F(s, kx, kappa) = 0, split by sign of Re(kappa).
/// Within each pair, roots are ordered by ascending |kappa|.
struct KappaRootSet {
    std::array<KappaRoot, 2> minus_roots;  // Re < 0, bounded as y -> +inf
    std::array<KappaRoot, 2> plus_roots;   // Re > 0, bounded as y -> -inf
};

/**
 * Solves the quartic characteristic equation in kappa for given s, kx and
 * classifies the roots by the sign of their real part. Isotropic media use
 * the closed forms kappa = +-sqrt(kx^2 + s^2/c^2) with the principal branch
 * of the square root; other media go through the companion-matrix solver.
 * kx may be complex (the PML-stretched variant passes kx/Sx).
 */
KappaRootSet kappa_roots(const MaterialParams& m, Complex s, Complex kx);

namespace detail {

/// Companion-matrix path, usable for any admissible medium. Exposed so the
/// isotropic closed forms can serve as its oracle in tests.
KappaRootSet kappa_roots_general(const MaterialParams& m, Complex s, Complex kx);

/// Eigenvector of (s^2 I + P(kx, kappa)) for a computed root, taken as the
/// singular vector of smallest singular value, normalized so the
/// larger-magnitude component equals one.
std::array<Complex, 2> nullspace_eigenvector(const MaterialParams& m, Complex s,
                                             Complex kx, Complex kappa);

/// Residual norm ||(s^2 I + P(kx, kappa)) phi||.
double mode_residual(const MaterialParams& m, Complex s, Complex kx,
                     const KappaRoot& root);

}  // namespace detail

}  // namespace epml
