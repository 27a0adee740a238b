#include "epml/sbp/operator.hpp"

#include <array>
#include <cmath>

namespace epml {

namespace {

// Boundary closure of the 4th-order diagonal-norm SBP first derivative.
// Row k of D1 (k = 0..3) is rows[k].nums / (rows[k].den * h) on columns
// 0..len-1; the last four rows are the sign-reversed mirror images.
struct ClosureRow {
    std::array<long, 6> nums;
    long den;
    int len;
};

constexpr std::array<ClosureRow, 4> kClosure = {{
    {{-48, 59, -8, -3, 0, 0}, 34, 4},
    {{-1, 0, 1, 0, 0, 0}, 2, 3},
    {{8, -59, 0, 59, -8, 0}, 86, 5},
    {{3, 0, -59, 0, 64, -8}, 98, 6},
}};

constexpr std::array<double, 4> kNormBoundary = {17.0 / 48.0, 59.0 / 48.0,
                                                 43.0 / 48.0, 49.0 / 48.0};

// Interior: (u[i-2] - 8 u[i-1] + 8 u[i+1] - u[i+2]) / (12 h)
inline double interior(const double* in, long i, long stride, double inv12h) {
    const double d1 = in[(i + 1) * stride] - in[(i - 1) * stride];
    const double d2 = in[(i - 2) * stride] - in[(i + 2) * stride];
    return (8.0 * d1 + d2) * inv12h;
}

}  // namespace

SbpOperator1D SbpOperator1D::classic(int n, double h) {
    if (n < 12) {
        throw GridTooSmall("SbpOperator1D: need n >= 12, got " +
                           std::to_string(n));
    }
    if (!(h > 0.0)) throw std::invalid_argument("SbpOperator1D: h must be > 0");
    SbpOperator1D op;
    op.n_ = n;
    op.h_ = h;
    op.periodic_ = false;
    op.H_.assign(n, h);
    for (int i = 0; i < 4; ++i) {
        op.H_[i] = kNormBoundary[i] * h;
        op.H_[n - 1 - i] = kNormBoundary[i] * h;
    }
    return op;
}

SbpOperator1D SbpOperator1D::periodic(int n, double h) {
    if (n < 5) {
        throw GridTooSmall("SbpOperator1D::periodic: need n >= 5");
    }
    if (!(h > 0.0)) throw std::invalid_argument("SbpOperator1D: h must be > 0");
    SbpOperator1D op;
    op.n_ = n;
    op.h_ = h;
    op.periodic_ = true;
    op.H_.assign(n, h);
    return op;
}

SbpOperator1D build_sbp_4(int n, double h) {
    return SbpOperator1D::classic(n, h);
}

void SbpOperator1D::apply(const double* in, double* out, long stride_in,
                          long stride_out) const {
    const double inv12h = 1.0 / (12.0 * h_);
    if (periodic_) {
        const long n = n_;
        for (long i = 0; i < n; ++i) {
            const double d1 =
                in[((i + 1) % n) * stride_in] - in[((i - 1 + n) % n) * stride_in];
            const double d2 =
                in[((i - 2 + n) % n) * stride_in] - in[((i + 2) % n) * stride_in];
            out[i * stride_out] = (8.0 * d1 + d2) * inv12h;
        }
        return;
    }
    const double inv_h = 1.0 / h_;
    // Closure rows evaluate in difference form relative to the diagonal node,
    // so constant input yields exactly zero.
    for (int i = 0; i < 4; ++i) {
        const ClosureRow& row = kClosure[i];
        const double u0 = in[static_cast<long>(i) * stride_in];
        double acc = 0.0;
        for (int j = 0; j < row.len; ++j) {
            if (row.nums[j] == 0) continue;
            acc += static_cast<double>(row.nums[j]) *
                   (in[static_cast<long>(j) * stride_in] - u0);
        }
        out[i * stride_out] = acc * inv_h / static_cast<double>(row.den);
    }
    for (long i = 4; i < n_ - 4; ++i) {
        out[i * stride_out] = interior(in, i, stride_in, inv12h);
    }
    for (int i = 0; i < 4; ++i) {
        const ClosureRow& row = kClosure[i];
        const long r = n_ - 1 - i;
        const double u0 = in[r * stride_in];
        double acc = 0.0;
        for (int j = 0; j < row.len; ++j) {
            if (row.nums[j] == 0) continue;
            acc += static_cast<double>(row.nums[j]) *
                   (in[(static_cast<long>(n_) - 1 - j) * stride_in] - u0);
        }
        out[r * stride_out] = -acc * inv_h / static_cast<double>(row.den);
    }
}

void SbpOperator1D::apply_transpose_H(const double* in, double* out,
                                      long stride_in, long stride_out) const {
    // D^T H = B - H D
    apply(in, out, stride_in, stride_out);
    for (long i = 0; i < n_; ++i) out[i * stride_out] *= -H_[i];
    if (!periodic_) {
        out[0] -= in[0];
        out[(n_ - 1) * stride_out] += in[(n_ - 1) * stride_in];
    }
}

double SbpOperator1D::row_dot(int i, const double* in, long stride) const {
    const double inv12h = 1.0 / (12.0 * h_);
    if (periodic_) {
        const long n = n_;
        const double d1 =
            in[((i + 1) % n) * stride] - in[((i - 1 + n) % n) * stride];
        const double d2 =
            in[((i - 2 + n) % n) * stride] - in[((i + 2) % n) * stride];
        return (8.0 * d1 + d2) * inv12h;
    }
    if (i >= 4 && i < n_ - 4) return interior(in, i, stride, inv12h);
    const double inv_h = 1.0 / h_;
    if (i < 4) {
        const ClosureRow& row = kClosure[i];
        const double u0 = in[static_cast<long>(i) * stride];
        double acc = 0.0;
        for (int j = 0; j < row.len; ++j) {
            if (row.nums[j] == 0) continue;
            acc += static_cast<double>(row.nums[j]) *
                   (in[static_cast<long>(j) * stride] - u0);
        }
        return acc * inv_h / static_cast<double>(row.den);
    }
    const int k = n_ - 1 - i;
    const ClosureRow& row = kClosure[k];
    const double u0 = in[static_cast<long>(i) * stride];
    double acc = 0.0;
    for (int j = 0; j < row.len; ++j) {
        if (row.nums[j] == 0) continue;
        acc += static_cast<double>(row.nums[j]) *
               (in[(static_cast<long>(n_) - 1 - j) * stride] - u0);
    }
    return -acc * inv_h / static_cast<double>(row.den);
}

std::vector<std::pair<int, double>> SbpOperator1D::row_stencil(int i) const {
    std::vector<std::pair<int, double>> st;
    if (periodic_ || (i >= 4 && i < n_ - 4)) {
        const double inv12h = 1.0 / (12.0 * h_);
        st = {{-2, inv12h}, {-1, -8.0 * inv12h}, {1, 8.0 * inv12h},
              {2, -inv12h}};
        return st;
    }
    if (i < 4) {
        const ClosureRow& row = kClosure[i];
        for (int j = 0; j < row.len; ++j) {
            if (row.nums[j] == 0 && j != i) continue;
            st.emplace_back(j - i, static_cast<double>(row.nums[j]) /
                                       (row.den * h_));
        }
        return st;
    }
    const int k = n_ - 1 - i;
    const ClosureRow& row = kClosure[k];
    for (int j = 0; j < row.len; ++j) {
        if (row.nums[j] == 0 && (n_ - 1 - j) != i) continue;
        st.emplace_back((n_ - 1 - j) - i, -static_cast<double>(row.nums[j]) /
                                              (row.den * h_));
    }
    return st;
}

std::vector<double> SbpOperator1D::dense() const {
    std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        for (const auto& [off, val] : row_stencil(i)) {
            int j = i + off;
            if (periodic_) j = (j % n_ + n_) % n_;
            d[static_cast<std::size_t>(i) * n_ + j] += val;
        }
    }
    return d;
}

}  // namespace epml
