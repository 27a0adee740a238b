#pragma once

#include <array>
#include <stdexcept>

namespace epml {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Thrown when the stiffness constants fail the ellipticity condition
/// c11 > 0, c22 > 0, c33 > 0, c11*c22 - c12^2 > 0 (strict).
class EllipticityViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the density is not strictly positive.
class NonPositiveDensity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WaveSpeeds {
    double cpx;  // p-wave speed along x
    double csx;  // s-wave speed along x
    double cpy;  // p-wave speed along y
    double csy;  // s-wave speed along y (== csx)

    double max() const;
    double min() const;
};

/**
 * @brief Orthotropic 2D elastic medium: density plus four stiffness constants.
 *
 * Single source of the coefficient matrices A, B, C, the strain-energy
 * matrix and the wave speeds. Construction validates admissibility
 * (positive density and strict ellipticity); instances are immutable.
 */
class MaterialParams {
public:
    static MaterialParams orthotropic(double rho, double c11, double c22,
                                      double c33, double c12);

    /// Isotropic medium from the Lame parameters:
    /// c11 = c22 = 2*mu + lambda, c33 = mu, c12 = lambda.
    static MaterialParams isotropic(double rho, double mu, double lambda);

    double rho() const { return rho_; }
    double c11() const { return c11_; }
    double c22() const { return c22_; }
    double c33() const { return c33_; }
    double c12() const { return c12_; }

    /// True when the constants have the isotropic structure
    /// (c11 == c22 and c11 == 2*c33 + c12, exact comparison).
    bool is_isotropic() const;

    double mu() const { return c33_; }
    double lambda() const { return c12_; }

    WaveSpeeds wave_speeds() const;

    Mat2 A() const;  // diag(c11, c33)
    Mat2 B() const;  // diag(c33, c22)
    Mat2 C() const;  // [[0, c12], [c33, 0]]

    /// 4x4 symmetric block matrix [[A, C], [C^T, B]].
    Mat4 strain_energy_matrix() const;

    /// Same medium with the roles of x and y exchanged
    /// (used for the y-direction geometric stability check).
    MaterialParams with_axes_swapped() const;

private:
    MaterialParams(double rho, double c11, double c22, double c33, double c12);

    double rho_;
    double c11_, c22_, c33_, c12_;
};

Mat4 strain_energy_matrix(const MaterialParams& m);
WaveSpeeds wave_speeds(const MaterialParams& m);

}  // namespace epml
