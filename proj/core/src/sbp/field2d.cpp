#include "epml/sbp/field2d.hpp"

#include <stdexcept>

namespace epml {

void apply_dx(const SbpOperator1D& opx, const Field2D& in, Field2D& out) {
    if (in.nx != opx.n()) throw std::invalid_argument("apply_dx: nx mismatch");
    out.nx = in.nx;
    out.ny = in.ny;
    out.data.resize(in.size());
    for (int iy = 0; iy < in.ny; ++iy) {
        const double* row = in.data.data() + static_cast<std::size_t>(iy) * in.nx;
        double* orow = out.data.data() + static_cast<std::size_t>(iy) * in.nx;
        opx.apply(row, orow, 1, 1);
    }
}

void apply_dy(const SbpOperator1D& opy, const Field2D& in, Field2D& out) {
    if (in.ny != opy.n()) throw std::invalid_argument("apply_dy: ny mismatch");
    out.nx = in.nx;
    out.ny = in.ny;
    out.data.resize(in.size());
    for (int ix = 0; ix < in.nx; ++ix) {
        opy.apply(in.data.data() + ix, out.data.data() + ix, in.nx, in.nx);
    }
}

std::vector<double> second_derivative(const SbpOperator1D& op,
                                      const std::vector<double>& b,
                                      const std::vector<double>& u) {
    const std::size_t n = static_cast<std::size_t>(op.n());
    if (b.size() != n || u.size() != n) {
        throw std::invalid_argument("second_derivative: size mismatch");
    }
    std::vector<double> du(n), out(n);
    op.apply(u.data(), du.data());
    for (std::size_t i = 0; i < n; ++i) du[i] *= b[i];
    op.apply(du.data(), out.data());
    return out;
}

Field2D apply_mixed_derivative(const SbpOperator1D& opx,
                               const SbpOperator1D& opy, const Field2D& c,
                               const Field2D& u) {
    if (c.nx != u.nx || c.ny != u.ny) {
        throw std::invalid_argument("apply_mixed_derivative: shape mismatch");
    }
    Field2D tmp, out;
    apply_dy(opy, u, tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp.data[i] *= c.data[i];
    apply_dx(opx, tmp, out);
    return out;
}

Field2D apply_mixed_derivative_transposed(const SbpOperator1D& opx,
                                          const SbpOperator1D& opy,
                                          const Field2D& c, const Field2D& u) {
    if (c.nx != u.nx || c.ny != u.ny) {
        throw std::invalid_argument("apply_mixed_derivative: shape mismatch");
    }
    Field2D tmp, out;
    apply_dx(opx, u, tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp.data[i] *= c.data[i];
    apply_dy(opy, tmp, out);
    return out;
}

}  // namespace epml
