#pragma once

#include <functional>
#include <stdexcept>

#include "epml/sbp/field2d.hpp"

namespace epml {

class DegenerateMapping : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameterized boundary curve on [0, 1].
using Curve = std::function<std::array<double, 2>(double)>;

struct BoundaryCurves {
    Curve bottom;  // r = 0
    Curve top;     // r = 1
    Curve left;    // q = 0
    Curve right;   // q = 1
};

/**
 * @brief Curvilinear grid over the unit reference square with discrete metrics.
 *
 * Nodal coordinates x(q,r), y(q,r) plus the Jacobian entries, inverse-metric
 * entries and |J| per node. Metric terms are differentiated with the same
 * SBP D1 operators the solver uses, which is what makes constant fields
 * exactly invisible to the mapped interior operator.
 */
struct MappedGrid {
    int nq = 0;
    int nr = 0;
    Field2D x, y;                    // nodal physical coordinates
    Field2D x_q, y_q, x_r, y_r;      // Jacobian entries
    Field2D q_x, q_y, r_x, r_y;      // inverse metrics
    Field2D jac;                     // |J| = x_q y_r - y_q x_r

    double hq() const { return 1.0 / (nq - 1); }
    double hr() const { return 1.0 / (nr - 1); }
};

/**
 * Transfinite interpolation of four boundary curves (corners must match to
 * 1e-10 of the domain scale) sampled on an nq x nr reference grid.
 * Metrics come from applying D1 to the nodal coordinates; a periodic_q grid
 * uses the analytic affine metric in q instead (the q-curves must then be
 * straight lines traversed uniformly).
 * Throws DegenerateMapping when |J| <= 0 anywhere.
 */
MappedGrid transfinite_grid(const BoundaryCurves& curves, int nq, int nr,
                            bool periodic_q = false);

/// Convenience: affine grid for the rectangle [x0,x1] x [y0,y1].
MappedGrid cartesian_grid(double x0, double x1, double y0, double y1, int nq,
                          int nr, bool periodic_q = false);

}  // namespace epml
