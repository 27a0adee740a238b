#include "epml/mapping/transformed.hpp"

namespace epml {

Mat2 TransformedCoefficients::a_tilde(int iq, int ir) const {
    return {{{ta11(iq, ir), ta12(iq, ir)}, {ta12(iq, ir), ta22(iq, ir)}}};
}
Mat2 TransformedCoefficients::b_tilde(int iq, int ir) const {
    return {{{tb11(iq, ir), tb12(iq, ir)}, {tb12(iq, ir), tb22(iq, ir)}}};
}
Mat2 TransformedCoefficients::c_tilde(int iq, int ir) const {
    return {{{tc11(iq, ir), tc12(iq, ir)}, {tc21(iq, ir), tc22(iq, ir)}}};
}
Mat2 TransformedCoefficients::a_hat_q(int iq, int ir) const {
    return {{{ahq1(iq, ir), 0.0}, {0.0, ahq2(iq, ir)}}};
}
Mat2 TransformedCoefficients::b_hat_q(int iq, int ir) const {
    return {{{bhq1(iq, ir), 0.0}, {0.0, bhq2(iq, ir)}}};
}
Mat2 TransformedCoefficients::a_hat_r(int iq, int ir) const {
    return {{{ahr1(iq, ir), 0.0}, {0.0, ahr2(iq, ir)}}};
}
Mat2 TransformedCoefficients::b_hat_r(int iq, int ir) const {
    return {{{bhr1(iq, ir), 0.0}, {0.0, bhr2(iq, ir)}}};
}

Mat4 TransformedCoefficients::strain_block(int iq, int ir) const {
    Mat4 p{};
    const Mat2 a = a_tilde(iq, ir), b = b_tilde(iq, ir), c = c_tilde(iq, ir);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            p[i][j] = a[i][j];
            p[i][2 + j] = c[i][j];
            p[2 + i][j] = c[j][i];
            p[2 + i][2 + j] = b[i][j];
        }
    }
    return p;
}

TransformedCoefficients transform_coefficients(const MappedGrid& grid,
                                               const MaterialField& material,
                                               const Field2D& sigma_x,
                                               const Field2D& sigma_y) {
    const int nq = grid.nq, nr = grid.nr;
    TransformedCoefficients t;
    t.nq = nq;
    t.nr = nr;
    for (Field2D* f : {&t.ta11, &t.ta12, &t.ta22, &t.tb11, &t.tb12, &t.tb22,
                       &t.tc11, &t.tc12, &t.tc21, &t.tc22, &t.ahq1, &t.ahq2,
                       &t.bhq1, &t.bhq2, &t.ahr1, &t.ahr2, &t.bhr1, &t.bhr2,
                       &t.rho_j}) {
        *f = Field2D(nq, nr);
    }

    for (int ir = 0; ir < nr; ++ir) {
        for (int iq = 0; iq < nq; ++iq) {
            const MaterialParams& m = material(iq, ir);
            const double a1 = m.c11(), a2 = m.c33();
            const double b1 = m.c33(), b2 = m.c22();
            const double cxy = m.c12(), cyx = m.c33();
            const double cc = cxy + cyx;

            const double qx = grid.q_x(iq, ir), qy = grid.q_y(iq, ir);
            const double rx = grid.r_x(iq, ir), ry = grid.r_y(iq, ir);
            const double J = grid.jac(iq, ir);

            t.ta11(iq, ir) = J * (qx * qx * a1 + qy * qy * b1);
            t.ta22(iq, ir) = J * (qx * qx * a2 + qy * qy * b2);
            t.ta12(iq, ir) = J * (qx * qy * cc);

            t.tb11(iq, ir) = J * (rx * rx * a1 + ry * ry * b1);
            t.tb22(iq, ir) = J * (rx * rx * a2 + ry * ry * b2);
            t.tb12(iq, ir) = J * (rx * ry * cc);

            t.tc11(iq, ir) = J * (qx * rx * a1 + qy * ry * b1);
            t.tc22(iq, ir) = J * (qx * rx * a2 + qy * ry * b2);
            t.tc12(iq, ir) = J * (qx * ry * cxy + qy * rx * cyx);
            t.tc21(iq, ir) = J * (qx * ry * cyx + qy * rx * cxy);

            const double dxy = sigma_y(iq, ir) - sigma_x(iq, ir);
            t.ahq1(iq, ir) = J * qx * dxy * a1;
            t.ahq2(iq, ir) = J * qx * dxy * a2;
            t.bhq1(iq, ir) = J * qy * (-dxy) * b1;
            t.bhq2(iq, ir) = J * qy * (-dxy) * b2;
            t.ahr1(iq, ir) = J * rx * dxy * a1;
            t.ahr2(iq, ir) = J * rx * dxy * a2;
            t.bhr1(iq, ir) = J * ry * (-dxy) * b1;
            t.bhr2(iq, ir) = J * ry * (-dxy) * b2;

            t.rho_j(iq, ir) = J * m.rho();
        }
    }
    return t;
}

}  // namespace epml
