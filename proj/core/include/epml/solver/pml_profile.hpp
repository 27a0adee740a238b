#pragma once

#include <cmath>

namespace epml {

/**
 * One-sided cubic damping ramp: sigma = 0 on the interior side of `start`,
 * sigma0 * ((coord - start)/width)^3 inside the layer. `rising` selects
 * whether damping grows toward +coordinate (right/top strips) or
 * -coordinate (left/bottom strips).
 */
struct PmlProfile {
    double start = 0.0;
    double width = 0.0;
    double sigma0 = 0.0;
    double alpha = 0.0;
    bool rising = true;

    double sigma(double coord) const {
        const double xi = rising ? (coord - start) / width
                                 : (start - coord) / width;
        if (xi <= 0.0) return 0.0;
        return sigma0 * xi * xi * xi;
    }
};

/// Damping strength sigma0 = 4 c_p,max / (2 delta) * ln(1/Ref).
inline double damping_strength(double cp_max, double delta, double ref) {
    return 4.0 * cp_max / (2.0 * delta) * std::log(1.0 / ref);
}

}  // namespace epml
