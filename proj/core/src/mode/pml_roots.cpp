#include "epml/mode/pml_roots.hpp"

#include <cmath>
#include <stdexcept>

#include "epml/mode/dispersion.hpp"

namespace epml {

std::array<Complex, 2> pml_root_map(double xi, double sigma, double alpha) {
    if (sigma < 0.0 || alpha < 0.0) {
        throw std::invalid_argument("pml_root_map: sigma, alpha must be >= 0");
    }
    auto ordered = [](Complex a, Complex b) -> std::array<Complex, 2> {
        if (a.real() < b.real() ||
            (a.real() == b.real() && a.imag() <= b.imag())) {
            return {a, b};
        }
        return {b, a};
    };
    if (alpha == 0.0) return ordered(Complex(-sigma, xi), Complex(0.0, 0.0));
    if (xi == 0.0) return ordered(Complex(-(alpha + sigma), 0.0), Complex(0.0, 0.0));

    const Complex b(alpha + sigma, -xi);
    const Complex disc = b * b + Complex(0.0, 4.0 * alpha * xi);
    const Complex r = std::sqrt(disc);
    return ordered((-b + r) / 2.0, (-b - r) / 2.0);
}

Complex pml_dispersion_F(const MaterialParams& m, Complex lambda,
                         std::array<double, 2> K, double epsilon, double nu) {
    const double knorm = std::hypot(K[0], K[1]);
    if (std::abs(knorm - 1.0) > 1e-12) {
        throw std::invalid_argument("pml_dispersion_F: K must be a unit vector");
    }
    const Complex sx = pml_stretch_value(lambda, PmlStretch{epsilon, nu});
    return dispersion_F(m, lambda, K[0] / sx, Complex(K[1]));
}

}  // namespace epml
