#include "epml/solver/energy.hpp"

#include <cmath>

namespace epml {

namespace {

void gradients(const LayerDisc& L, const double* u, Field2D& gq, Field2D& gr) {
    const int nq = L.nq(), nr = L.nr();
    for (int ir = 0; ir < nr; ++ir) {
        L.opq.apply(u + static_cast<std::size_t>(ir) * nq,
                    gq.data.data() + static_cast<std::size_t>(ir) * nq, 1, 1);
    }
    for (int iq = 0; iq < nq; ++iq) {
        L.opr.apply(u + iq, gr.data.data() + iq, nq, nq);
    }
}

}  // namespace

double energy_norm(const Discretization& d, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t li = 0; li < d.layers.size(); ++li) {
        const LayerDisc& L = d.layers[li];
        const auto v = d.view<const double>(static_cast<int>(li), y.data());
        const int nq = L.nq(), nr = L.nr();
        for (int ir = 0; ir < nr; ++ir) {
            const double hr = L.opr.norm_weight(ir);
            for (int iq = 0; iq < nq; ++iq) {
                const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                const double w = L.opq.norm_weight(iq) * hr * L.grid.jac.data[i];
                acc += w * (v.u1[i] * v.u1[i] + v.u2[i] * v.u2[i]);
            }
        }
    }
    return std::sqrt(acc);
}

double mechanical_energy(const Discretization& d, const std::vector<double>& y,
                         RhsWorkspace& ws) {
    double acc = 0.0;
    for (std::size_t li = 0; li < d.layers.size(); ++li) {
        const LayerDisc& L = d.layers[li];
        auto& S = ws.layers[li];
        const auto v = d.view<const double>(static_cast<int>(li), y.data());
        const int nq = L.nq(), nr = L.nr();
        gradients(L, v.u1, S.gq1, S.gr1);
        gradients(L, v.u2, S.gq2, S.gr2);
        const TransformedCoefficients& C = L.coeff;
        for (int ir = 0; ir < nr; ++ir) {
            const double hr = L.opr.norm_weight(ir);
            for (int iq = 0; iq < nq; ++iq) {
                const std::size_t i = static_cast<std::size_t>(ir) * nq + iq;
                const double w = L.opq.norm_weight(iq) * hr;
                const double g1 = S.gq1.data[i], g2 = S.gq2.data[i];
                const double h1 = S.gr1.data[i], h2 = S.gr2.data[i];
                double strain =
                    C.ta11.data[i] * g1 * g1 + 2.0 * C.ta12.data[i] * g1 * g2 +
                    C.ta22.data[i] * g2 * g2 + C.tb11.data[i] * h1 * h1 +
                    2.0 * C.tb12.data[i] * h1 * h2 + C.tb22.data[i] * h2 * h2 +
                    2.0 * (C.tc11.data[i] * g1 * h1 + C.tc12.data[i] * g1 * h2 +
                           C.tc21.data[i] * g2 * h1 + C.tc22.data[i] * g2 * h2);
                const double kinetic = C.rho_j.data[i] *
                                       (v.p1[i] * v.p1[i] + v.p2[i] * v.p2[i]);
                acc += 0.5 * w * (kinetic + strain);
            }
        }
    }
    return acc;
}

Field2D displacement_magnitude(const Discretization& d,
                               const std::vector<double>& y, int layer) {
    const LayerDisc& L = d.layers[layer];
    const auto v = d.view<const double>(layer, y.data());
    Field2D out(L.nq(), L.nr());
    for (std::size_t i = 0; i < L.nodes(); ++i) {
        out.data[i] = std::hypot(v.u1[i], v.u2[i]);
    }
    return out;
}

}  // namespace epml
