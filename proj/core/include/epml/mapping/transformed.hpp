#pragma once

#include <functional>

#include "epml/mapping/mapped_grid.hpp"
#include "epml/material.hpp"

namespace epml {

/**
 * @brief Per-node coefficient blocks of the elastic-PML system in reference
 * coordinates.
 *
 * The block matrix [[At, Ct], [Ct^T, Bt]] equals
 * |J| M^T [[A, C], [C^T, B]] M with M the gradient pull-back, so it inherits
 * positive semi-definiteness. The PML couplings split per flux direction:
 * the q-flux carries Aq_hat*v + Bq_hat*w and the r-flux Ar_hat*v + Br_hat*w,
 * with Aq_hat = |J| q_x (sigma_y - sigma_x) A and so on; on an identity map
 * they collapse to the physical-space couplings (sigma_y - sigma_x) A and
 * (sigma_x - sigma_y) B.
 */
struct TransformedCoefficients {
    int nq = 0, nr = 0;

    // At (symmetric), Bt (symmetric), Ct (general)
    Field2D ta11, ta12, ta22;
    Field2D tb11, tb12, tb22;
    Field2D tc11, tc12, tc21, tc22;

    // diagonal PML coupling blocks (A and B are diagonal)
    Field2D ahq1, ahq2, bhq1, bhq2;  // q-flux couplings
    Field2D ahr1, ahr2, bhr1, bhr2;  // r-flux couplings

    Field2D rho_j;  // rho * |J|

    Mat2 a_tilde(int iq, int ir) const;
    Mat2 b_tilde(int iq, int ir) const;
    Mat2 c_tilde(int iq, int ir) const;
    Mat2 a_hat_q(int iq, int ir) const;
    Mat2 b_hat_q(int iq, int ir) const;
    Mat2 a_hat_r(int iq, int ir) const;
    Mat2 b_hat_r(int iq, int ir) const;

    /// 4x4 reference strain-energy block at a node (for the PSD property).
    Mat4 strain_block(int iq, int ir) const;
};

/// Material lookup per node (constant for homogeneous layers, nodal for
/// raster-derived media).
using MaterialField = std::function<const MaterialParams&(int iq, int ir)>;

TransformedCoefficients transform_coefficients(const MappedGrid& grid,
                                               const MaterialField& material,
                                               const Field2D& sigma_x,
                                               const Field2D& sigma_y);

}  // namespace epml
