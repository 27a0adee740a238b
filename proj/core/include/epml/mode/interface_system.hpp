#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "epml/material.hpp"
#include "epml/mode/kappa.hpp"

namespace epml {

/// Bimaterial pair at a planar interface y = 0: top occupies y > 0,
/// bottom occupies y < 0.
struct InterfaceSystem {
    MaterialParams top;
    MaterialParams bottom;
};

using Mat4c = std::array<std::array<Complex, 4>, 4>;

/**
 * The 4x4 interface matrix C(s, kx): columns 1-2 carry the top medium's
 * decaying modes (Re kappa < 0), columns 3-4 the bottom medium's
 * (Re kappa > 0, entering with a minus sign). Rows 1-2 stack displacement
 * continuity, rows 3-4 the traction terms (kappa B + i kx C^T) Phi.
 * With a PmlStretch the wavenumber is replaced by kx/Sx before the root
 * computation.
 */
Mat4c interface_matrix(const InterfaceSystem& sys, Complex s, double kx,
                       std::optional<PmlStretch> stretch = std::nullopt);

/// Determinant of interface_matrix. Nonzero for all Re(s) > 0 iff the
/// coupled problem admits no growing interface modes.
Complex interface_determinant(const InterfaceSystem& sys, Complex s, double kx,
                              std::optional<PmlStretch> stretch = std::nullopt);

struct InterfaceRootSearchResult {
    std::vector<double> roots;       // refined xi values, s = i*xi
    double scan_max = 0.0;           // max |F| seen on the scan grid
    double epsilon = 0.0;            // real-axis offset used
};

/**
 * Scans |F(i*xi + eps, kx)| over [xi_lo, xi_hi] and returns refined local
 * minima that drop below 1e-4 of the scan maximum. The offset
 * eps = 1e-8 * |kx| * c_ref keeps the evaluation inside the classified
 * half-plane. Minima within two grid cells of a body-wave branch speed
 * (xi = c * kx for c in the four wave speeds) are branch points of the
 * square root, not interface modes, and are discarded. An empty list is a
 * valid outcome: Stoneley roots exist only for limited material contrasts.
 */
InterfaceRootSearchResult interface_root_search(const InterfaceSystem& sys,
                                                double kx, double xi_lo,
                                                double xi_hi, int n_scan);

namespace detail {

/// Builds the interface matrix from explicit root sets (top minus roots,
/// bottom plus roots), used by tests to probe eigenvector-scaling behavior.
Mat4c interface_matrix_from_roots(const InterfaceSystem& sys, Complex ktilde,
                                  const KappaRootSet& top,
                                  const KappaRootSet& bottom);

Complex det4(const Mat4c& m);

}  // namespace detail

}  // namespace epml
