#include "epml/material.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epml {

double WaveSpeeds::max() const {
    return std::max({cpx, csx, cpy, csy});
}

double WaveSpeeds::min() const {
    return std::min({cpx, csx, cpy, csy});
}

MaterialParams::MaterialParams(double rho, double c11, double c22, double c33,
                               double c12)
    : rho_(rho), c11_(c11), c22_(c22), c33_(c33), c12_(c12) {
    if (!(std::isfinite(rho) && std::isfinite(c11) && std::isfinite(c22) &&
          std::isfinite(c33) && std::isfinite(c12))) {
        throw std::invalid_argument("MaterialParams: non-finite argument");
    }
    if (!(rho > 0.0)) {
        throw NonPositiveDensity("MaterialParams: rho must be > 0, got " +
                                 std::to_string(rho));
    }
    if (!(c11 > 0.0 && c22 > 0.0 && c33 > 0.0 && c11 * c22 - c12 * c12 > 0.0)) {
        throw EllipticityViolation(
            "MaterialParams: stiffness constants violate ellipticity "
            "(need c11,c22,c33 > 0 and c11*c22 - c12^2 > 0)");
    }
}

MaterialParams MaterialParams::orthotropic(double rho, double c11, double c22,
                                           double c33, double c12) {
    return MaterialParams(rho, c11, c22, c33, c12);
}

MaterialParams MaterialParams::isotropic(double rho, double mu, double lambda) {
    return MaterialParams(rho, 2.0 * mu + lambda, 2.0 * mu + lambda, mu, lambda);
}

bool MaterialParams::is_isotropic() const {
    return c11_ == c22_ && c11_ == 2.0 * c33_ + c12_;
}

WaveSpeeds MaterialParams::wave_speeds() const {
    return WaveSpeeds{std::sqrt(c11_ / rho_), std::sqrt(c33_ / rho_),
                      std::sqrt(c22_ / rho_), std::sqrt(c33_ / rho_)};
}

Mat2 MaterialParams::A() const {
    return Mat2{{{c11_, 0.0}, {0.0, c33_}}};
}

Mat2 MaterialParams::B() const {
    return Mat2{{{c33_, 0.0}, {0.0, c22_}}};
}

Mat2 MaterialParams::C() const {
    return Mat2{{{0.0, c12_}, {c33_, 0.0}}};
}

Mat4 MaterialParams::strain_energy_matrix() const {
    // [[A, C], [C^T, B]]
    Mat4 p{};
    p[0][0] = c11_;
    p[1][1] = c33_;
    p[2][2] = c33_;
    p[3][3] = c22_;
    p[0][3] = c12_;
    p[3][0] = c12_;
    p[1][2] = c33_;
    p[2][1] = c33_;
    return p;
}

MaterialParams MaterialParams::with_axes_swapped() const {
    return MaterialParams(rho_, c22_, c11_, c33_, c12_);
}

Mat4 strain_energy_matrix(const MaterialParams& m) {
    return m.strain_energy_matrix();
}

WaveSpeeds wave_speeds(const MaterialParams& m) {
    return m.wave_speeds();
}

}  // namespace epml
