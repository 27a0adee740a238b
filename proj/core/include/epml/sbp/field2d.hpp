#pragma once

#include <cassert>
#include <vector>

#include "epml/sbp/operator.hpp"

namespace epml {

/// Scalar nodal field on an nx-by-ny grid, row-major with x contiguous.
struct Field2D {
    int nx = 0;
    int ny = 0;
    std::vector<double> data;

    Field2D() = default;
    Field2D(int nx_, int ny_, double fill = 0.0)
        : nx(nx_), ny(ny_), data(static_cast<std::size_t>(nx_) * ny_, fill) {}

    double& operator()(int ix, int iy) {
        return data[static_cast<std::size_t>(iy) * nx + ix];
    }
    double operator()(int ix, int iy) const {
        return data[static_cast<std::size_t>(iy) * nx + ix];
    }
    std::size_t size() const { return data.size(); }
};

/// out = d/dx in (operator applied along each row).
void apply_dx(const SbpOperator1D& opx, const Field2D& in, Field2D& out);

/// out = d/dy in (operator applied along each column).
void apply_dy(const SbpOperator1D& opy, const Field2D& in, Field2D& out);

/// Wide-stencil variable-coefficient second derivative D (b . (D u)) in 1D.
std::vector<double> second_derivative(const SbpOperator1D& op,
                                      const std::vector<double>& b,
                                      const std::vector<double>& u);

/// Mixed derivative Dx (c . (Dy u)) with a nodal scalar coefficient c.
Field2D apply_mixed_derivative(const SbpOperator1D& opx,
                               const SbpOperator1D& opy, const Field2D& c,
                               const Field2D& u);

/// Transpose partner Dy (c . (Dx u)).
Field2D apply_mixed_derivative_transposed(const SbpOperator1D& opx,
                                          const SbpOperator1D& opy,
                                          const Field2D& c, const Field2D& u);

}  // namespace epml
