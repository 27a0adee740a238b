#include "epml/solver/sources.hpp"

#include <cmath>

namespace epml {

std::vector<double> zero_state(const Discretization& d) {
    return std::vector<double>(d.state_size, 0.0);
}

void gaussian_initial_data(const Discretization& d, const GaussianInitSpec& g,
                           std::vector<double>& y) {
    for (std::size_t li = 0; li < d.layers.size(); ++li) {
        const LayerDisc& L = d.layers[li];
        auto v = d.view<double>(static_cast<int>(li), y.data());
        for (int ir = 0; ir < L.nr(); ++ir) {
            for (int iq = 0; iq < L.nq(); ++iq) {
                const std::size_t i = static_cast<std::size_t>(ir) * L.nq() + iq;
                const double dx = L.grid.x(iq, ir) - g.center[0];
                const double dy = L.grid.y(iq, ir) - g.center[1];
                const double val = g.amplitude *
                                   std::exp(-g.width_coefficient *
                                            (dx * dx + dy * dy));
                v.u1[i] = val;
                v.u2[i] = val;
            }
        }
    }
}

double moment_time_function(const MomentSourceSpec& ms, double t) {
    const double dt = t - ms.t0;
    return std::exp(-dt * dt / ms.tau);
}

std::array<double, 2> moment_source(const MomentSourceSpec& ms, double s1,
                                    double s2, double t, double x, double y) {
    const double g = moment_time_function(ms, t);
    const double norm = 1.0 / (2.0 * M_PI * std::sqrt(s1 * s2));
    double gx = 0.0, gy = 0.0;
    for (const auto& loc : ms.locations) {
        const double dx = x - loc[0];
        const double dy = y - loc[1];
        const double f =
            norm * std::exp(-(dx * dx / (2.0 * s1) + dy * dy / (2.0 * s2)));
        gx += f * (-dx / s1);
        gy += f * (-dy / s2);
    }
    return {ms.m0 * g * gx, ms.m0 * g * gy};
}

}  // namespace epml
