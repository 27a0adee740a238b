#include "epml/mapping/mapped_grid.hpp"

#include <cmath>
#include <string>

namespace epml {

namespace {

void check_corners(const BoundaryCurves& c) {
    auto close = [](std::array<double, 2> a, std::array<double, 2> b,
                    double scale) {
        return std::abs(a[0] - b[0]) <= 1e-10 * scale &&
               std::abs(a[1] - b[1]) <= 1e-10 * scale;
    };
    const auto p00 = c.bottom(0.0), p10 = c.bottom(1.0);
    const auto p01 = c.top(0.0), p11 = c.top(1.0);
    double scale = 1.0;
    for (const auto& p : {p00, p10, p01, p11}) {
        scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
    }
    if (!close(c.left(0.0), p00, scale) || !close(c.left(1.0), p01, scale) ||
        !close(c.right(0.0), p10, scale) || !close(c.right(1.0), p11, scale)) {
        throw std::invalid_argument(
            "transfinite_grid: boundary curve corners do not match");
    }
}

}  // namespace

MappedGrid transfinite_grid(const BoundaryCurves& curves, int nq, int nr,
                            bool periodic_q) {
    check_corners(curves);
    MappedGrid g;
    g.nq = nq;
    g.nr = nr;
    g.x = Field2D(nq, nr);
    g.y = Field2D(nq, nr);

    const auto p00 = curves.bottom(0.0), p10 = curves.bottom(1.0);
    const auto p01 = curves.top(0.0), p11 = curves.top(1.0);

    for (int jr = 0; jr < nr; ++jr) {
        const double r = double(jr) / (nr - 1);
        for (int jq = 0; jq < nq; ++jq) {
            // periodic q-grids sample [0, 1); node nq would alias node 0
            const double q = periodic_q ? double(jq) / nq : double(jq) / (nq - 1);
            const auto cb = curves.bottom(q), ct = curves.top(q);
            const auto cl = curves.left(r), cr = curves.right(r);
            for (int d = 0; d < 2; ++d) {
                const double blend =
                    (1.0 - r) * cb[d] + r * ct[d] + (1.0 - q) * cl[d] +
                    q * cr[d] -
                    ((1.0 - q) * (1.0 - r) * p00[d] + q * (1.0 - r) * p10[d] +
                     (1.0 - q) * r * p01[d] + q * r * p11[d]);
                (d == 0 ? g.x : g.y)(jq, jr) = blend;
            }
        }
    }

    const SbpOperator1D dq = periodic_q
                                 ? SbpOperator1D::periodic(nq, 1.0 / nq)
                                 : SbpOperator1D::classic(nq, 1.0 / (nq - 1));
    const SbpOperator1D dr = SbpOperator1D::classic(nr, 1.0 / (nr - 1));

    if (periodic_q) {
        // wraparound differencing of the raw coordinate would see the period
        // jump; the q-direction must be an affine sweep, so its metric is set
        // analytically from the end-to-end extent
        g.x_q = Field2D(nq, nr);
        g.y_q = Field2D(nq, nr);
        for (int jr = 0; jr < nr; ++jr) {
            const double Lx = (curves.bottom(1.0)[0] - curves.bottom(0.0)[0]);
            const double Ly = (curves.bottom(1.0)[1] - curves.bottom(0.0)[1]);
            for (int jq = 0; jq < nq; ++jq) {
                g.x_q(jq, jr) = Lx;
                g.y_q(jq, jr) = Ly;
            }
        }
    } else {
        apply_dx(dq, g.x, g.x_q);
        apply_dx(dq, g.y, g.y_q);
    }
    apply_dy(dr, g.x, g.x_r);
    apply_dy(dr, g.y, g.y_r);

    g.q_x = Field2D(nq, nr);
    g.q_y = Field2D(nq, nr);
    g.r_x = Field2D(nq, nr);
    g.r_y = Field2D(nq, nr);
    g.jac = Field2D(nq, nr);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double xq = g.x_q.data[i], yq = g.y_q.data[i];
        const double xr = g.x_r.data[i], yr = g.y_r.data[i];
        const double det = xq * yr - yq * xr;
        if (!(det > 0.0)) {
            throw DegenerateMapping("transfinite_grid: |J| <= 0 at node " +
                                    std::to_string(i));
        }
        g.jac.data[i] = det;
        g.q_x.data[i] = yr / det;
        g.q_y.data[i] = -xr / det;
        g.r_x.data[i] = -yq / det;
        g.r_y.data[i] = xq / det;
    }
    return g;
}

MappedGrid cartesian_grid(double x0, double x1, double y0, double y1, int nq,
                          int nr, bool periodic_q) {
    BoundaryCurves c;
    c.bottom = [=](double q) { return std::array<double, 2>{x0 + q * (x1 - x0), y0}; };
    c.top = [=](double q) { return std::array<double, 2>{x0 + q * (x1 - x0), y1}; };
    c.left = [=](double r) { return std::array<double, 2>{x0, y0 + r * (y1 - y0)}; };
    c.right = [=](double r) { return std::array<double, 2>{x1, y0 + r * (y1 - y0)}; };
    return transfinite_grid(c, nq, nr, periodic_q);
}

}  // namespace epml
