#include "epml/solver/discretization.hpp"

#include <algorithm>
#include <cmath>

#include "epml/solver/raster.hpp"

namespace epml {

namespace {

double spec_norm_sym2(double a11, double a12, double a22) {
    const double m = 0.5 * (a11 + a22);
    const double d = std::hypot(0.5 * (a11 - a22), a12);
    return m + d;
}

int snap_extension(double width, double h) {
    int n = static_cast<int>(std::llround(width / h));
    return std::max(n, 4);
}

struct PmlLayout {
    std::optional<PmlProfile> low, high;
    int n_low = 0, n_high = 0;
    double width_low = 0.0, width_high = 0.0;
};

// Snap each side's width to a whole number of grid cells of that side's
// spacing, then fix sigma0 from the snapped width.
PmlLayout make_layout(const std::optional<PmlDirectionSpec>& spec, double lo,
                      double hi, double h_low, double h_high, double cp_max) {
    PmlLayout out;
    if (!spec) return out;
    const double extent = hi - lo;
    const double width = spec->width > 0.0 ? spec->width
                                           : spec->width_fraction * extent;
    auto sigma0_for = [&](double delta) {
        return spec->sigma0_override >= 0.0
                   ? spec->sigma0_override
                   : damping_strength(cp_max, delta, spec->ref);
    };
    if (spec->low_side) {
        out.n_low = snap_extension(width, h_low);
        out.width_low = out.n_low * h_low;
        out.low = PmlProfile{lo, out.width_low, sigma0_for(out.width_low), 0.0,
                             /*rising=*/false};
    }
    if (spec->high_side) {
        out.n_high = snap_extension(width, h_high);
        out.width_high = out.n_high * h_high;
        out.high = PmlProfile{hi, out.width_high, sigma0_for(out.width_high),
                              0.0, /*rising=*/true};
    }
    return out;
}

double sigma_of(const std::optional<PmlProfile>& lo,
                const std::optional<PmlProfile>& hi, double c) {
    double s = 0.0;
    if (lo) s += lo->sigma(c);
    if (hi) s += hi->sigma(c);
    return s;
}

}  // namespace

double Discretization::sigma_x_at(double x) const {
    return sigma_of(px_low, px_high, x);
}

double Discretization::sigma_y_at(double y) const {
    return sigma_of(py_low, py_high, y);
}

Discretization build_discretization(const ScenarioConfig& cfg_in) {
    ScenarioConfig cfg = cfg_in;
    cfg.validate();

    Discretization d;

    // Raster mode fills in geometry, grid size and per-node materials.
    RasterModel raster;
    std::vector<const MaterialParams*> raster_rows;
    if (cfg.raster) {
        raster = ingest_raster_model(cfg.raster->path, cfg.raster->stride);
        cfg.x_min = raster.x0;
        cfg.x_max = raster.x0 + raster.dx * (raster.nx - 1);
        cfg.nx = raster.nx;
        cfg.layers.clear();
        const double y_lo = raster.y0;
        const double y_hi = raster.y0 + raster.dy * (raster.ny - 1);
        if (cfg.raster->split_row && *cfg.raster->split_row > 0 &&
            *cfg.raster->split_row < raster.ny - 1) {
            const int r = *cfg.raster->split_row;
            LayerSpec topl;  // rows r .. ny-1
            topl.y_min = raster.y0 + raster.dy * r;
            topl.y_max = y_hi;
            topl.n = raster.ny - r;
            LayerSpec botl;  // rows 0 .. r
            botl.y_min = y_lo;
            botl.y_max = raster.y0 + raster.dy * r;
            botl.n = r + 1;
            cfg.layers = {topl, botl};
        } else {
            LayerSpec l;
            l.y_min = y_lo;
            l.y_max = y_hi;
            l.n = raster.ny;
            cfg.layers = {l};
        }
        if (cfg.nx < 12) throw ConfigError("raster: nx < 12 after stride");
        for (const auto& l : cfg.layers) {
            if (l.n < 12) throw ConfigError("raster: layer rows < 12 after stride");
        }
    }

    // global maximum p-speed
    double cp_max = 0.0;
    if (cfg.raster) {
        for (const auto& m : raster.cells) {
            cp_max = std::max(cp_max, m.wave_speeds().max());
        }
    } else {
        for (const auto& l : cfg.layers) {
            cp_max = std::max(cp_max, l.material->wave_speeds().max());
        }
    }
    d.cp_max = cp_max;

    const double hx = (cfg.x_max - cfg.x_min) / (cfg.nx - 1);
    const LayerSpec& last = cfg.layers.back();
    const LayerSpec& first = cfg.layers.front();
    const double hy_bottom = (last.y_max - last.y_min) / (last.n - 1);
    const double hy_top = (first.y_max - first.y_min) / (first.n - 1);

    PmlLayout lx = make_layout(cfg.pml_x, cfg.x_min, cfg.x_max, hx, hx, cp_max);
    PmlLayout ly = make_layout(cfg.pml_y, last.y_min, first.y_max, hy_bottom,
                               hy_top, cp_max);
    double sigma0 = 0.0;
    for (const auto& p : {lx.low, lx.high, ly.low, ly.high}) {
        if (p) sigma0 = std::max(sigma0, p->sigma0);
    }
    const double alpha = cfg.alpha_override >= 0.0 ? cfg.alpha_override
                                                   : cfg.alpha_ratio * sigma0;
    d.alpha = alpha;
    for (auto* p : {&lx.low, &lx.high, &ly.low, &ly.high}) {
        if (*p) (*p)->alpha = alpha;
    }
    d.px_low = lx.low;
    d.px_high = lx.high;
    d.py_low = ly.low;
    d.py_high = ly.high;
    d.sigma0_x = lx.low ? lx.low->sigma0 : (lx.high ? lx.high->sigma0 : 0.0);
    d.sigma0_y = ly.low ? ly.low->sigma0 : (ly.high ? ly.high->sigma0 : 0.0);

    d.ext_x_min = cfg.x_min - lx.width_low;
    d.ext_x_max = cfg.x_max + lx.width_high;
    const int nq = cfg.nx + lx.n_low + lx.n_high;
    const bool periodic_x = cfg.left == BoundaryKind::Periodic;
    const bool periodic_y = cfg.top == BoundaryKind::Periodic;
    const bool any_sy = ly.low.has_value() || ly.high.has_value();

    // y-PML extends the outermost layers, preserving their spacing
    std::vector<LayerSpec> layers = cfg.layers;
    if (ly.high) {
        layers.front().y_max += ly.width_high;
        layers.front().n += ly.n_high;
    }
    if (ly.low) {
        layers.back().y_min -= ly.width_low;
        layers.back().n += ly.n_low;
    }

    d.cfg = cfg;

    const int n_layers = static_cast<int>(layers.size());
    d.layers.resize(n_layers);
    std::size_t offset = 0;

    for (int li = 0; li < n_layers; ++li) {
        const LayerSpec& spec = layers[li];
        LayerDisc& L = d.layers[li];
        const int nr = spec.n;

        // grid: affine rectangle or TFI against the interface curve
        const bool curved_bottom =
            cfg.interface_curve && li == 0;
        const bool curved_top = cfg.interface_curve && li == 1;
        if (curved_bottom || curved_top) {
            const InterfaceCurveSpec c = *cfg.interface_curve;
            const double y_base = cfg.layers[0].y_min;
            const double xa = d.ext_x_min, xb = d.ext_x_max;
            auto hill = [=](double q) {
                const double x = xa + q * (xb - xa);
                const double dxc = x - c.center;
                return std::array<double, 2>{
                    x, y_base + c.amplitude * std::exp(-c.width * dxc * dxc)};
            };
            BoundaryCurves bc;
            if (curved_bottom) {
                bc.bottom = hill;
                bc.top = [=](double q) {
                    return std::array<double, 2>{xa + q * (xb - xa), spec.y_max};
                };
                bc.left = [=, h = hill](double r) {
                    const double yl = h(0.0)[1];
                    return std::array<double, 2>{xa, yl + r * (spec.y_max - yl)};
                };
                bc.right = [=, h = hill](double r) {
                    const double yr = h(1.0)[1];
                    return std::array<double, 2>{xb, yr + r * (spec.y_max - yr)};
                };
            } else {
                bc.top = hill;
                bc.bottom = [=](double q) {
                    return std::array<double, 2>{xa + q * (xb - xa), spec.y_min};
                };
                bc.left = [=, h = hill](double r) {
                    const double yt = h(0.0)[1];
                    return std::array<double, 2>{xa, spec.y_min + r * (yt - spec.y_min)};
                };
                bc.right = [=, h = hill](double r) {
                    const double yt = h(1.0)[1];
                    return std::array<double, 2>{xb, spec.y_min + r * (yt - spec.y_min)};
                };
            }
            L.grid = transfinite_grid(bc, nq, nr, periodic_x);
        } else {
            L.grid = cartesian_grid(d.ext_x_min, d.ext_x_max, spec.y_min,
                                    spec.y_max, nq, nr, periodic_x);
        }

        L.periodic_q = periodic_x;
        L.periodic_r = periodic_y;
        L.opq = periodic_x ? SbpOperator1D::periodic(nq, 1.0 / nq)
                           : SbpOperator1D::classic(nq, 1.0 / (nq - 1));
        L.opr = periodic_y ? SbpOperator1D::periodic(nr, 1.0 / nr)
                           : SbpOperator1D::classic(nr, 1.0 / (nr - 1));

        // materials
        if (cfg.raster) {
            L.heterogeneous = true;
            L.materials.reserve(L.nodes());
            const int row0 = (n_layers == 2 && li == 0) ? *cfg.raster->split_row
                                                        : 0;
            for (int ir = 0; ir < nr; ++ir) {
                for (int iq = 0; iq < nq; ++iq) {
                    // clamp into the raster; PML extension replicates edges
                    const int rx = std::clamp(iq - lx.n_low, 0, raster.nx - 1);
                    const int ry = std::clamp(row0 + ir, 0, raster.ny - 1);
                    L.materials.push_back(raster.at(rx, ry));
                }
            }
        } else {
            L.materials = {*spec.material};
        }

        // damping fields and auxiliary mask
        L.sx = Field2D(nq, nr);
        L.sy = Field2D(nq, nr);
        L.aux_mask = Field2D(nq, nr);
        for (int ir = 0; ir < nr; ++ir) {
            for (int iq = 0; iq < nq; ++iq) {
                const double sx = d.sigma_x_at(L.grid.x(iq, ir));
                const double sy = d.sigma_y_at(L.grid.y(iq, ir));
                L.sx(iq, ir) = sx;
                L.sy(iq, ir) = sy;
                L.aux_mask(iq, ir) = (sx > 0.0 || sy > 0.0) ? 1.0 : 0.0;
            }
        }
        L.has_r = any_sy;
        L.n_fields = L.has_r ? 12 : 10;

        // strip dissipation coefficients
        const double eps = cfg.dissipation.epsilon;
        L.disq_c = Field2D(nq, nr);
        L.disr_c = Field2D(nq, nr);
        if (eps > 0.0) {
            for (int ir = 0; ir < nr; ++ir) {
                for (int iq = 0; iq < nq; ++iq) {
                    const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                    const double rj = L.grid.jac(iq, ir) *
                                      L.material_at(iq, ir).rho();
                    L.disq_c.data[i] =
                        eps * L.sx(iq, ir) * rj * L.opq.norm_weight(iq);
                    L.disr_c.data[i] =
                        eps * L.sy(iq, ir) * rj * L.opr.norm_weight(ir);
                    if (L.disq_c.data[i] > 0.0 || L.disr_c.data[i] > 0.0) {
                        L.has_dissipation = true;
                    }
                }
            }
        }

        // global grid dissipation, gated on actual damping somewhere
        const bool damping_active =
            (lx.low && lx.low->sigma0 > 0.0) ||
            (lx.high && lx.high->sigma0 > 0.0) ||
            (ly.low && ly.low->sigma0 > 0.0) ||
            (ly.high && ly.high->sigma0 > 0.0);
        const double geps = cfg.grid_dissipation.epsilon;
        L.gdisq_c = Field2D(nq, nr);
        L.gdisr_c = Field2D(nq, nr);
        if (damping_active && geps > 0.0) {
            L.has_grid_dissipation = true;
            for (int ir = 0; ir < nr; ++ir) {
                for (int iq = 0; iq < nq; ++iq) {
                    const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                    const MaterialParams& m = L.material_at(iq, ir);
                    const double rj = L.grid.jac(iq, ir) * m.rho();
                    const double cp = m.wave_speeds().max();
                    const double hq_phys =
                        L.opq.h() * std::hypot(L.grid.x_q(iq, ir),
                                               L.grid.y_q(iq, ir));
                    const double hr_phys =
                        L.opr.h() * std::hypot(L.grid.x_r(iq, ir),
                                               L.grid.y_r(iq, ir));
                    L.gdisq_c.data[i] =
                        geps * rj * cp * L.opq.norm_weight(iq) / hq_phys;
                    L.gdisr_c.data[i] =
                        geps * rj * cp * L.opr.norm_weight(ir) / hr_phys;
                }
            }
        }

        MaterialField mat = [&L](int iq, int ir) -> const MaterialParams& {
            return L.material_at(iq, ir);
        };
        L.coeff = transform_coefficients(L.grid, mat, L.sx, L.sy);

        // spatial factor of the moment point source: M0 * grad(f_delta)
        if (cfg.moment_source) {
            const auto& ms = *cfg.moment_source;
            const double s1 = ms.s_factor * hx;
            const double s2 = s1;
            const double norm = 1.0 / (2.0 * M_PI * std::sqrt(s1 * s2));
            L.msrc1 = Field2D(nq, nr);
            L.msrc2 = Field2D(nq, nr);
            bool any = false;
            for (int ir = 0; ir < nr; ++ir) {
                for (int iq = 0; iq < nq; ++iq) {
                    double gx = 0.0, gy = 0.0;
                    for (const auto& loc : ms.locations) {
                        const double dx = L.grid.x(iq, ir) - loc[0];
                        const double dyy = L.grid.y(iq, ir) - loc[1];
                        const double f = norm * std::exp(-(dx * dx / (2.0 * s1) +
                                                           dyy * dyy / (2.0 * s2)));
                        gx += f * (-dx / s1);
                        gy += f * (-dyy / s2);
                    }
                    L.msrc1(iq, ir) = ms.m0 * gx;
                    L.msrc2(iq, ir) = ms.m0 * gy;
                    if (gx != 0.0 || gy != 0.0) any = true;
                }
            }
            L.has_moment = any;
        }

        // faces
        auto fill_face = [&](Face f, BoundaryKind kind, bool is_interface) {
            FaceData& fd = L.faces[static_cast<int>(f)];
            fd.kind = kind;
            fd.is_interface = is_interface;
            const bool xface = (f == Face::Left || f == Face::Right);
            const int count = xface ? nr : nq;
            fd.z1.resize(count);
            fd.z2.resize(count);
            fd.scale.resize(count);
            fd.sigma_trans.resize(count);
            for (int k = 0; k < count; ++k) {
                const int iq = xface ? (f == Face::Left ? 0 : nq - 1) : k;
                const int ir = xface ? k : (f == Face::Bottom ? 0 : nr - 1);
                const MaterialParams& m = L.material_at(iq, ir);
                const WaveSpeeds ws = m.wave_speeds();
                if (xface) {
                    fd.z1[k] = m.rho() * ws.cpx;
                    fd.z2[k] = m.rho() * ws.csx;
                    fd.scale[k] = L.grid.jac(iq, ir) *
                                  std::hypot(L.grid.q_x(iq, ir), L.grid.q_y(iq, ir));
                    fd.sigma_trans[k] = L.sy(iq, ir);
                } else {
                    fd.z1[k] = m.rho() * ws.csy;
                    fd.z2[k] = m.rho() * ws.cpy;
                    fd.scale[k] = L.grid.jac(iq, ir) *
                                  std::hypot(L.grid.r_x(iq, ir), L.grid.r_y(iq, ir));
                    fd.sigma_trans[k] = L.sx(iq, ir);
                }
            }
        };
        fill_face(Face::Left, cfg.left, false);
        fill_face(Face::Right, cfg.right, false);
        fill_face(Face::Top, li == 0 ? cfg.top : BoundaryKind::Characteristic,
                  li != 0);
        fill_face(Face::Bottom,
                  li == n_layers - 1 ? cfg.bottom : BoundaryKind::Characteristic,
                  li != n_layers - 1);

        L.offset = offset;
        offset += L.nodes() * static_cast<std::size_t>(L.n_fields);
    }
    d.state_size = offset;

    // interface penalties
    const double w0 = 17.0 / 48.0;
    d.interfaces.resize(std::max(0, n_layers - 1));
    for (int li = 0; li + 1 < n_layers; ++li) {
        LayerDisc& Lt = d.layers[li];       // interface at its row 0
        LayerDisc& Lb = d.layers[li + 1];   // interface at its last row
        const int nrb = Lb.nr();
        InterfaceData& I = d.interfaces[li];
        I.tau.resize(nq);
        I.zb1.resize(nq);
        I.zb2.resize(nq);
        const double hrt = Lt.opr.h(), hrb = Lb.opr.h();
        for (int i = 0; i < nq; ++i) {
            const double nbt = spec_norm_sym2(Lt.coeff.tb11(i, 0),
                                              Lt.coeff.tb12(i, 0),
                                              Lt.coeff.tb22(i, 0));
            const double nbb = spec_norm_sym2(Lb.coeff.tb11(i, nrb - 1),
                                              Lb.coeff.tb12(i, nrb - 1),
                                              Lb.coeff.tb22(i, nrb - 1));
            I.tau[i] = d.cfg.sat.tau0 * 0.5 *
                       (nbt / (w0 * hrt) + nbb / (w0 * hrb));
            const FaceData& ft = Lt.faces[static_cast<int>(Face::Bottom)];
            const FaceData& fb = Lb.faces[static_cast<int>(Face::Top)];
            I.zb1[i] = d.cfg.sat.gamma0 * 0.5 *
                       (ft.scale[i] * ft.z1[i] + fb.scale[i] * fb.z1[i]);
            I.zb2[i] = d.cfg.sat.gamma0 * 0.5 *
                       (ft.scale[i] * ft.z2[i] + fb.scale[i] * fb.z2[i]);
        }
    }

    // explicit time step: on sheared grids the restriction follows the
    // metric gradients, rate = cp (|grad q|/hq + |grad r|/hr); this reduces
    // to cfl * h / cp on square Cartesian cells
    double rate = 0.0;
    for (const LayerDisc& L : d.layers) {
        const double hq = L.opq.h(), hr = L.opr.h();
        for (int ir = 0; ir < L.nr(); ++ir) {
            for (int iq = 0; iq < L.nq(); ++iq) {
                const double gq =
                    std::hypot(L.grid.q_x(iq, ir), L.grid.q_y(iq, ir));
                const double gr =
                    std::hypot(L.grid.r_x(iq, ir), L.grid.r_y(iq, ir));
                const double cp = L.material_at(iq, ir).wave_speeds().max();
                rate = std::max(rate, cp * (gq / hq + gr / hr));
            }
        }
    }
    d.dt = cfg.time.dt_override > 0.0 ? cfg.time.dt_override
                                      : 2.0 * cfg.time.cfl / rate;
    return d;
}

RhsWorkspace make_workspace(const Discretization& d) {
    RhsWorkspace ws;
    ws.layers.resize(d.layers.size());
    for (std::size_t li = 0; li < d.layers.size(); ++li) {
        const int nq = d.layers[li].nq(), nr = d.layers[li].nr();
        auto& s = ws.layers[li];
        for (Field2D* f : {&s.gq1, &s.gq2, &s.gr1, &s.gr2, &s.fq1, &s.fq2,
                           &s.fr1, &s.fr2}) {
            *f = Field2D(nq, nr);
        }
        s.row_a.assign(static_cast<std::size_t>(nq) * 2, 0.0);
        s.row_b.assign(static_cast<std::size_t>(nq) * 2, 0.0);
    }
    return ws;
}

}  // namespace epml
