#include <cmath>
#include <cstring>

#include "epml/solver/discretization.hpp"

namespace epml {

namespace {

// dst = Dq(src) along rows
void dq_into(const SbpOperator1D& op, const double* src, int nq, int nr,
             double* dst) {
    for (int ir = 0; ir < nr; ++ir) {
        op.apply(src + static_cast<std::size_t>(ir) * nq,
                 dst + static_cast<std::size_t>(ir) * nq, 1, 1);
    }
}

// dst = Dr(src) along columns
void dr_into(const SbpOperator1D& op, const double* src, int nq, int nr,
             double* dst) {
    for (int iq = 0; iq < nq; ++iq) {
        op.apply(src + iq, dst + iq, nq, nq);
    }
    (void)nr;
}

// dst += Dr(src) along columns
void dr_add(const SbpOperator1D& op, const double* src, int nq, int nr,
            double* dst, std::vector<double>& col) {
    col.resize(nr);
    for (int iq = 0; iq < nq; ++iq) {
        op.apply(src + iq, col.data(), nq, 1);
        for (int ir = 0; ir < nr; ++ir) {
            dst[static_cast<std::size_t>(ir) * nq + iq] += col[ir];
        }
    }
}

}  // namespace

void eval_rhs(const Discretization& d, double t, const double* y, double* dy,
              RhsWorkspace& ws) {
    const int n_layers = static_cast<int>(d.layers.size());
    const double alpha = d.alpha;

    // pass 1: gradients, fluxes, displacement and auxiliary blocks
    for (int li = 0; li < n_layers; ++li) {
        const LayerDisc& L = d.layers[li];
        auto& S = ws.layers[li];
        const auto v = d.view<const double>(li, y);
        const auto dv = d.view<double>(li, dy);
        const int nq = L.nq(), nr = L.nr();
        const std::size_t n = L.nodes();
        const TransformedCoefficients& C = L.coeff;

        dq_into(L.opq, v.u1, nq, nr, S.gq1.data.data());
        dq_into(L.opq, v.u2, nq, nr, S.gq2.data.data());
        dr_into(L.opr, v.u1, nq, nr, S.gr1.data.data());
        dr_into(L.opr, v.u2, nq, nr, S.gr2.data.data());

        for (std::size_t i = 0; i < n; ++i) {
            const double g1 = S.gq1.data[i], g2 = S.gq2.data[i];
            const double h1 = S.gr1.data[i], h2 = S.gr2.data[i];
            // q-flux = At gq + Ct gr + Aq_hat v + Bq_hat w
            S.fq1.data[i] = C.ta11.data[i] * g1 + C.ta12.data[i] * g2 +
                            C.tc11.data[i] * h1 + C.tc12.data[i] * h2 +
                            C.ahq1.data[i] * v.v1[i] + C.bhq1.data[i] * v.w1[i];
            S.fq2.data[i] = C.ta12.data[i] * g1 + C.ta22.data[i] * g2 +
                            C.tc21.data[i] * h1 + C.tc22.data[i] * h2 +
                            C.ahq2.data[i] * v.v2[i] + C.bhq2.data[i] * v.w2[i];
            // r-flux = Ct^T gq + Bt gr + Ar_hat v + Br_hat w
            S.fr1.data[i] = C.tc11.data[i] * g1 + C.tc21.data[i] * g2 +
                            C.tb11.data[i] * h1 + C.tb12.data[i] * h2 +
                            C.ahr1.data[i] * v.v1[i] + C.bhr1.data[i] * v.w1[i];
            S.fr2.data[i] = C.tc12.data[i] * g1 + C.tc22.data[i] * g2 +
                            C.tb12.data[i] * h1 + C.tb22.data[i] * h2 +
                            C.ahr2.data[i] * v.v2[i] + C.bhr2.data[i] * v.w2[i];
        }

        for (std::size_t i = 0; i < n; ++i) {
            dv.u1[i] = v.p1[i];
            dv.u2[i] = v.p2[i];
        }
        const double* qx = L.grid.q_x.data.data();
        const double* qy = L.grid.q_y.data.data();
        const double* rx = L.grid.r_x.data.data();
        const double* ry = L.grid.r_y.data.data();
        const double* mask = L.aux_mask.data.data();
        const double* sx = L.sx.data.data();
        const double* sy = L.sy.data.data();
        for (std::size_t i = 0; i < n; ++i) {
            const double m = mask[i];
            const double ux1 = qx[i] * S.gq1.data[i] + rx[i] * S.gr1.data[i];
            const double ux2 = qx[i] * S.gq2.data[i] + rx[i] * S.gr2.data[i];
            const double uy1 = qy[i] * S.gq1.data[i] + ry[i] * S.gr1.data[i];
            const double uy2 = qy[i] * S.gq2.data[i] + ry[i] * S.gr2.data[i];
            dv.v1[i] = m * (ux1 - (alpha + sx[i]) * v.v1[i]);
            dv.v2[i] = m * (ux2 - (alpha + sx[i]) * v.v2[i]);
            dv.w1[i] = m * (uy1 - (alpha + sy[i]) * v.w1[i]);
            dv.w2[i] = m * (uy2 - (alpha + sy[i]) * v.w2[i]);
            dv.q1[i] = m * alpha * (v.u1[i] - v.q1[i]);
            dv.q2[i] = m * alpha * (v.u2[i] - v.q2[i]);
        }
        if (L.has_r) {
            for (std::size_t i = 0; i < n; ++i) {
                dv.r1[i] = mask[i] * alpha * (v.u1[i] - v.q1[i] - v.r1[i]);
                dv.r2[i] = mask[i] * alpha * (v.u2[i] - v.q2[i] - v.r2[i]);
            }
        }
    }

    // pass 2: momentum = divergence / (rho |J|) + zeroth-order terms,
    // then boundary SATs and sources
    for (int li = 0; li < n_layers; ++li) {
        const LayerDisc& L = d.layers[li];
        auto& S = ws.layers[li];
        const auto v = d.view<const double>(li, y);
        const auto dv = d.view<double>(li, dy);
        const int nq = L.nq(), nr = L.nr();
        const std::size_t n = L.nodes();

        dq_into(L.opq, S.fq1.data.data(), nq, nr, dv.p1);
        dq_into(L.opq, S.fq2.data.data(), nq, nr, dv.p2);
        std::vector<double>& col = S.col_scratch;
        dr_add(L.opr, S.fr1.data.data(), nq, nr, dv.p1, col);
        dr_add(L.opr, S.fr2.data.data(), nq, nr, dv.p2, col);

        const double* sx = L.sx.data.data();
        const double* sy = L.sy.data.data();
        const double* rj = L.coeff.rho_j.data.data();
        const bool damped = d.px_low || d.px_high || d.py_low || d.py_high;
        for (std::size_t i = 0; i < n; ++i) {
            double a1 = dv.p1[i] / rj[i];
            double a2 = dv.p2[i] / rj[i];
            if (damped) {
                const double ss = sx[i] + sy[i];
                const double prod = sx[i] * sy[i];
                const double rr1 = L.has_r ? v.r1[i] : 0.0;
                const double rr2 = L.has_r ? v.r2[i] : 0.0;
                a1 += -ss * v.p1[i] + alpha * ss * (v.u1[i] - v.q1[i]) -
                      prod * (v.u1[i] - v.q1[i] - rr1);
                a2 += -ss * v.p2[i] + alpha * ss * (v.u2[i] - v.q2[i]) -
                      prod * (v.u2[i] - v.q2[i] - rr2);
            }
            dv.p1[i] = a1;
            dv.p2[i] = a2;
        }

        // strip dissipation: dp -= (Delta^T c Delta p) / (rho|J| H), with
        // Delta the undivided second difference along the damped direction
        if (L.has_dissipation) {
            auto dissipate = [&](const Field2D& cfield, bool along_q,
                                 const double* p, double* dp) {
                std::vector<double>& t = S.col_scratch;
                const int len = along_q ? nq : nr;
                const int count = along_q ? nr : nq;
                const long stride = along_q ? 1 : nq;
                t.resize(static_cast<std::size_t>(len));
                for (int k = 0; k < count; ++k) {
                    const std::size_t base =
                        along_q ? static_cast<std::size_t>(k) * nq
                                : static_cast<std::size_t>(k);
                    const double* pk = p + base;
                    const double* ck = cfield.data.data() + base;
                    for (int i = 1; i + 1 < len; ++i) {
                        const double d2 = pk[(i - 1) * stride] -
                                          2.0 * pk[i * stride] +
                                          pk[(i + 1) * stride];
                        t[i] = ck[i * stride] * d2;
                    }
                    t[0] = 0.0;
                    t[len - 1] = 0.0;
                    double* dpk = dp + base;
                    const double* rj_k = L.coeff.rho_j.data.data() + base;
                    for (int i = 0; i < len; ++i) {
                        const double tm = (i > 0) ? t[i - 1] : 0.0;
                        const double tp = (i + 1 < len) ? t[i + 1] : 0.0;
                        const double d2t = tm - 2.0 * t[i] + tp;
                        const double hw = along_q ? L.opq.norm_weight(i)
                                                  : L.opr.norm_weight(i);
                        dpk[i * stride] -= d2t / (rj_k[i * stride] * hw);
                    }
                }
            };
            dissipate(L.disq_c, true, v.p1, dv.p1);
            dissipate(L.disq_c, true, v.p2, dv.p2);
            dissipate(L.disr_c, false, v.p1, dv.p1);
            dissipate(L.disr_c, false, v.p2, dv.p2);
        }

        // sixth-difference grid dissipation (third difference applied twice)
        if (L.has_grid_dissipation) {
            auto dissipate6 = [&](const Field2D& cfield, bool along_q,
                                  const double* p, double* dp) {
                std::vector<double>& t = S.col_scratch;
                const int len = along_q ? nq : nr;
                const int count = along_q ? nr : nq;
                const long stride = along_q ? 1 : nq;
                t.assign(static_cast<std::size_t>(len), 0.0);
                for (int k = 0; k < count; ++k) {
                    const std::size_t base =
                        along_q ? static_cast<std::size_t>(k) * nq
                                : static_cast<std::size_t>(k);
                    const double* pk = p + base;
                    const double* ck = cfield.data.data() + base;
                    for (int i = 1; i + 2 < len; ++i) {
                        const double d3 = -pk[(i - 1) * stride] +
                                          3.0 * pk[i * stride] -
                                          3.0 * pk[(i + 1) * stride] +
                                          pk[(i + 2) * stride];
                        t[i] = ck[i * stride] * d3;
                    }
                    t[0] = 0.0;
                    t[len - 1] = 0.0;
                    t[len - 2] = 0.0;
                    double* dpk = dp + base;
                    const double* rj_k = L.coeff.rho_j.data.data() + base;
                    // (Delta3^T s)_j = s_{j-2} - 3 s_{j-1} + 3 s_j - s_{j+1}
                    for (int i = 0; i < len; ++i) {
                        const double tmm = (i > 1) ? t[i - 2] : 0.0;
                        const double tm = (i > 0) ? t[i - 1] : 0.0;
                        const double tp = (i + 1 < len) ? t[i + 1] : 0.0;
                        const double d3t = tmm - 3.0 * tm + 3.0 * t[i] - tp;
                        const double hw = along_q ? L.opq.norm_weight(i)
                                                  : L.opr.norm_weight(i);
                        dpk[i * stride] -= d3t / (rj_k[i * stride] * hw);
                    }
                }
            };
            dissipate6(L.gdisq_c, true, v.p1, dv.p1);
            dissipate6(L.gdisq_c, true, v.p2, dv.p2);
            dissipate6(L.gdisr_c, false, v.p1, dv.p1);
            dissipate6(L.gdisr_c, false, v.p2, dv.p2);
        }

        auto face_sat = [&](Face f) {
            const FaceData& fd = L.faces[static_cast<int>(f)];
            if (fd.is_interface || fd.kind == BoundaryKind::Periodic) return;
            const bool xface = (f == Face::Left || f == Face::Right);
            const int count = xface ? nr : nq;
            const double sign_out =
                (f == Face::Right || f == Face::Top) ? 1.0 : -1.0;
            const int face_q = (f == Face::Left) ? 0 : nq - 1;
            const int face_r = (f == Face::Bottom) ? 0 : nr - 1;
            const double hw = xface ? L.opq.norm_weight(face_q)
                                    : L.opr.norm_weight(face_r);
            for (int k = 0; k < count; ++k) {
                const int iq = xface ? face_q : k;
                const int ir = xface ? k : face_r;
                const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                const double Rout1 =
                    sign_out * (xface ? S.fq1.data[i] : S.fr1.data[i]);
                const double Rout2 =
                    sign_out * (xface ? S.fq2.data[i] : S.fr2.data[i]);
                double res1 = Rout1, res2 = Rout2;
                if (fd.kind == BoundaryKind::Characteristic) {
                    const double st = fd.sigma_trans[k];
                    res1 += fd.scale[k] * fd.z1[k] *
                            (v.p1[i] + st * (v.u1[i] - v.q1[i]));
                    res2 += fd.scale[k] * fd.z2[k] *
                            (v.p2[i] + st * (v.u2[i] - v.q2[i]));
                }
                if (d.boundary_data) {
                    const auto g = d.boundary_data(li, f, L.grid.x(iq, ir),
                                                   L.grid.y(iq, ir), t);
                    res1 -= fd.scale[k] * g[0];
                    res2 -= fd.scale[k] * g[1];
                }
                const double w = 1.0 / (L.coeff.rho_j.data[i] * hw);
                dv.p1[i] -= res1 * w;
                dv.p2[i] -= res2 * w;
            }
        };
        face_sat(Face::Left);
        face_sat(Face::Right);
        face_sat(Face::Top);
        face_sat(Face::Bottom);

        if (L.has_moment && d.cfg.moment_source) {
            const auto& ms = *d.cfg.moment_source;
            const double dt0 = t - ms.t0;
            const double g = std::exp(-dt0 * dt0 / ms.tau);
            for (std::size_t i = 0; i < n; ++i) {
                const double inv_rho = L.grid.jac.data[i] / rj[i];
                dv.p1[i] += g * L.msrc1.data[i] * inv_rho;
                dv.p2[i] += g * L.msrc2.data[i] * inv_rho;
            }
        }
        if (d.extra_force) {
            for (int ir = 0; ir < nr; ++ir) {
                for (int iq = 0; iq < nq; ++iq) {
                    const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                    const auto f = d.extra_force(li, L.grid.x(iq, ir),
                                                 L.grid.y(iq, ir), t);
                    const double inv_rho = L.grid.jac.data[i] / rj[i];
                    dv.p1[i] += f[0] * inv_rho;
                    dv.p2[i] += f[1] * inv_rho;
                }
            }
        }
    }

    // pass 3: interface SATs
    for (int li = 0; li + 1 < n_layers; ++li) {
        const LayerDisc& Lt = d.layers[li];       // interface at its row 0
        const LayerDisc& Lb = d.layers[li + 1];   // interface at its last row
        const InterfaceData& I = d.interfaces[li];
        auto& St = ws.layers[li];
        auto& Sb = ws.layers[li + 1];
        const auto vt = d.view<const double>(li, y);
        const auto vb = d.view<const double>(li + 1, y);
        const auto dvt = d.view<double>(li, dy);
        const auto dvb = d.view<double>(li + 1, dy);
        const int nq = Lt.nq();
        const int nrb = Lb.nr();
        const std::size_t rowb = static_cast<std::size_t>(nrb - 1) * nq;

        const double hwt = Lt.opr.norm_weight(0);
        const double hwb = Lb.opr.norm_weight(nrb - 1);

        double* ju = St.row_a.data();  // components interleaved, 2*nq
        double* jp = St.row_b.data();
        for (int i = 0; i < nq; ++i) {
            ju[2 * i] = vt.u1[i] - vb.u1[rowb + i];
            ju[2 * i + 1] = vt.u2[i] - vb.u2[rowb + i];
            jp[2 * i] = vt.p1[i] - vb.p1[rowb + i];
            jp[2 * i + 1] = vt.p2[i] - vb.p2[rowb + i];
        }

        for (int i = 0; i < nq; ++i) {
            const double jR1 = St.fr1.data[i] - Sb.fr1.data[rowb + i];
            const double jR2 = St.fr2.data[i] - Sb.fr2.data[rowb + i];
            const double s1 = 0.5 * jR1 - I.tau[i] * ju[2 * i] -
                              I.zb1[i] * jp[2 * i];
            const double s2 = 0.5 * jR2 - I.tau[i] * ju[2 * i + 1] -
                              I.zb2[i] * jp[2 * i + 1];
            dvt.p1[i] += s1 / (Lt.coeff.rho_j.data[i] * hwt);
            dvt.p2[i] += s2 / (Lt.coeff.rho_j.data[i] * hwt);
            const double b1 = 0.5 * jR1 + I.tau[i] * ju[2 * i] +
                              I.zb1[i] * jp[2 * i];
            const double b2 = 0.5 * jR2 + I.tau[i] * ju[2 * i + 1] +
                              I.zb2[i] * jp[2 * i + 1];
            dvb.p1[rowb + i] += b1 / (Lb.coeff.rho_j.data[rowb + i] * hwb);
            dvb.p2[rowb + i] += b2 / (Lb.coeff.rho_j.data[rowb + i] * hwb);
        }

        // symmetrizer, r-direction: scatter Bt*[u] through the interface Dr row
        for (const auto& [off, val] : Lt.opr.row_stencil(0)) {
            const int jr = off;
            const double hw = Lt.opr.norm_weight(jr);
            for (int i = 0; i < nq; ++i) {
                const std::size_t k = static_cast<std::size_t>(jr) * nq + i;
                const double b1 = Lt.coeff.tb11(i, 0) * ju[2 * i] +
                                  Lt.coeff.tb12(i, 0) * ju[2 * i + 1];
                const double b2 = Lt.coeff.tb12(i, 0) * ju[2 * i] +
                                  Lt.coeff.tb22(i, 0) * ju[2 * i + 1];
                dvt.p1[k] -= 0.5 * val * b1 / (Lt.coeff.rho_j.data[k] * hw);
                dvt.p2[k] -= 0.5 * val * b2 / (Lt.coeff.rho_j.data[k] * hw);
            }
        }
        for (const auto& [off, val] : Lb.opr.row_stencil(nrb - 1)) {
            const int jr = nrb - 1 + off;
            const double hw = Lb.opr.norm_weight(jr);
            for (int i = 0; i < nq; ++i) {
                const std::size_t k = static_cast<std::size_t>(jr) * nq + i;
                const double b1 = Lb.coeff.tb11(i, nrb - 1) * ju[2 * i] +
                                  Lb.coeff.tb12(i, nrb - 1) * ju[2 * i + 1];
                const double b2 = Lb.coeff.tb12(i, nrb - 1) * ju[2 * i] +
                                  Lb.coeff.tb22(i, nrb - 1) * ju[2 * i + 1];
                dvb.p1[k] -= 0.5 * val * b1 / (Lb.coeff.rho_j.data[k] * hw);
                dvb.p2[k] -= 0.5 * val * b2 / (Lb.coeff.rho_j.data[k] * hw);
            }
        }

        // symmetrizer, q-direction: (Dq^T Hq)(Ct [u]) along the interface row
        auto q_part = [&](const LayerDisc& L, int row, LayerView<double> dv_,
                          double hw, RhsWorkspace::LayerScratch& S_) {
            std::vector<double>& psi1 = S_.psi1;
            std::vector<double>& psi2 = S_.psi2;
            std::vector<double>& phi1 = S_.phi1;
            std::vector<double>& phi2 = S_.phi2;
            psi1.resize(nq);
            psi2.resize(nq);
            phi1.resize(nq);
            phi2.resize(nq);
            const TransformedCoefficients& C = L.coeff;
            for (int i = 0; i < nq; ++i) {
                psi1[i] = C.tc11(i, row) * ju[2 * i] + C.tc12(i, row) * ju[2 * i + 1];
                psi2[i] = C.tc21(i, row) * ju[2 * i] + C.tc22(i, row) * ju[2 * i + 1];
            }
            L.opq.apply_transpose_H(psi1.data(), phi1.data());
            L.opq.apply_transpose_H(psi2.data(), phi2.data());
            const std::size_t base = static_cast<std::size_t>(row) * nq;
            for (int i = 0; i < nq; ++i) {
                const double w =
                    0.5 / (C.rho_j.data[base + i] * L.opq.norm_weight(i) * hw);
                dv_.p1[base + i] -= phi1[i] * w;
                dv_.p2[base + i] -= phi2[i] * w;
            }
        };
        q_part(Lt, 0, dvt, hwt, St);
        q_part(Lb, nrb - 1, dvb, hwb, Sb);
    }
}

}  // namespace epml
