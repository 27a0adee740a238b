#pragma once

#include <stdexcept>
#include <vector>

namespace epml {

class GridTooSmall : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief 1D summation-by-parts first-derivative operator, 4th-order interior.
 *
 * Diagonal norm H with boundary weights h*(17/48, 59/48, 43/48, 49/48) and
 * the matching 4-row boundary closure; satisfies H D + D^T H = B exactly,
 * with B = diag(-1, 0, ..., 0, +1). The periodic variant applies the interior
 * stencil with wraparound, H = h I and B = 0.
 *
 * Stencils are stored as integer numerators over a common row denominator and
 * applied in difference form relative to the diagonal entry, so constant
 * fields are annihilated exactly (not just to round-off).
 */
class SbpOperator1D {
public:
    SbpOperator1D() = default;  // empty; assign from classic()/periodic()

    static SbpOperator1D classic(int n, double h);
    static SbpOperator1D periodic(int n, double h);

    int n() const { return n_; }
    double h() const { return h_; }
    bool is_periodic() const { return periodic_; }

    const std::vector<double>& norm_weights() const { return H_; }
    double norm_weight(int i) const { return H_[i]; }

    /// out = D1 * in over a strided sequence (in[i*stride], i = 0..n-1).
    void apply(const double* in, double* out, long stride_in = 1,
               long stride_out = 1) const;

    /// out = (D1^T H) * in. Equals (B - H D1) * in by the SBP identity and is
    /// evaluated that way.
    void apply_transpose_H(const double* in, double* out, long stride_in = 1,
                           long stride_out = 1) const;

    /// Dense matrix of D1 (row-major n x n); for tests and diagnostics.
    std::vector<double> dense() const;

    /// Derivative row i applied to a strided sequence.
    double row_dot(int i, const double* in, long stride) const;

    /// Coefficients of row i as (offset, value) pairs relative to node i.
    std::vector<std::pair<int, double>> row_stencil(int i) const;

private:
    int n_ = 0;
    double h_ = 0.0;
    bool periodic_ = false;
    std::vector<double> H_;
};

/// Builds the classic (boundary-closed) 4th-order operator. Requires n >= 12.
SbpOperator1D build_sbp_4(int n, double h);

}  // namespace epml
