#include "epml/mode/kappa.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace epml {

Complex pml_stretch_value(Complex s, const PmlStretch& stretch) {
    const Complex denom = stretch.alpha + s;
    if (denom == Complex(0.0, 0.0)) {
        throw PoleAtMinusAlpha("pml_stretch_value: s == -alpha");
    }
    return 1.0 + stretch.sigma / denom;
}

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector2cd;

Matrix2cd mode_matrix(const MaterialParams& m, Complex s, Complex kx,
                      Complex kappa) {
    // s^2 I + (kx^2 A - kappa^2 B - i kx kappa (C + C^T)) / rho
    const Complex s2 = s * s;
    const Complex kx2 = kx * kx, kp2 = kappa * kappa;
    const double rho = m.rho();
    const Complex coupling =
        Complex(0.0, -1.0) * kx * kappa * (m.c12() + m.c33()) / rho;
    Matrix2cd M;
    M(0, 0) = s2 + (kx2 * m.c11() - kp2 * m.c33()) / rho;
    M(1, 1) = s2 + (kx2 * m.c33() - kp2 * m.c22()) / rho;
    M(0, 1) = coupling;
    M(1, 0) = coupling;
    return M;
}

// Shear-branch eigenvector [i kappa / kx, 1]; p-branch [i kx / kappa, 1].
// (Each is the nullspace direction with the second component set to one.)
std::array<Complex, 2> iso_eigenvector(Complex kx, Complex kappa, bool shear) {
    const Complex i(0.0, 1.0);
    if (shear) return {i * kappa / kx, Complex(1.0)};
    return {i * kx / kappa, Complex(1.0)};
}

void classify(const std::array<Complex, 4>& roots, const MaterialParams& m,
              Complex s, Complex kx, KappaRootSet& out,
              bool iso_closed_form) {
    std::vector<Complex> minus, plus;
    for (const Complex& k : roots) {
        if (std::abs(k.real()) <= 1e-12) {
            throw SignClassificationFailure(
                "kappa_roots: root with |Re kappa| <= 1e-12; classification "
                "undefined (is Re(s) > 0?)");
        }
        (k.real() < 0.0 ? minus : plus).push_back(k);
    }
    if (minus.size() != 2 || plus.size() != 2) {
        throw SignClassificationFailure(
            "kappa_roots: expected two roots per half-plane");
    }
    auto by_modulus = [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    };
    std::sort(minus.begin(), minus.end(), by_modulus);
    std::sort(plus.begin(), plus.end(), by_modulus);

    auto attach = [&](const Complex& kappa) -> KappaRoot {
        KappaRoot r;
        r.kappa = kappa;
        if (iso_closed_form) {
            // identify the branch: the root satisfies kappa^2 = kx^2 + s^2/c^2
            const Complex z = kappa * kappa - kx * kx;  // = s^2 / c^2
            const double cs2 = m.c33() / m.rho();
            const double cp2 = m.c11() / m.rho();
            const bool shear = std::abs(z * cs2 - s * s) <= std::abs(z * cp2 - s * s);
            if (std::abs(kx) > 1e-8 * (std::abs(kappa) + std::abs(kx)) &&
                std::abs(kappa) > 1e-8 * (std::abs(kappa) + std::abs(kx))) {
                r.phi = iso_eigenvector(kx, kappa, shear);
                return r;
            }
        }
        r.phi = detail::nullspace_eigenvector(m, s, kx, kappa);
        return r;
    };
    out.minus_roots = {attach(minus[0]), attach(minus[1])};
    out.plus_roots = {attach(plus[0]), attach(plus[1])};
}

}  // namespace

namespace detail {

std::array<Complex, 2> nullspace_eigenvector(const MaterialParams& m, Complex s,
                                             Complex kx, Complex kappa) {
    const Matrix2cd M = mode_matrix(m, s, kx, kappa);
    Eigen::JacobiSVD<Matrix2cd> svd(M, Eigen::ComputeFullV);
    Vector2cd v = svd.matrixV().col(1);
    const int big = (std::abs(v(0)) >= std::abs(v(1))) ? 0 : 1;
    v /= v(big);
    return {v(0), v(1)};
}

double mode_residual(const MaterialParams& m, Complex s, Complex kx,
                     const KappaRoot& root) {
    const Matrix2cd M = mode_matrix(m, s, kx, root.kappa);
    const Vector2cd phi(root.phi[0], root.phi[1]);
    return (M * phi).norm();
}

KappaRootSet kappa_roots_general(const MaterialParams& m, Complex s, Complex kx) {
    // rho^2 F = c22 c33 kappa^4
    //         + [kx^2 (c12+c33)^2 - c22 (rho s^2 + c11 kx^2)
    //                            - c33 (rho s^2 + c33 kx^2)] kappa^2
    //         + (rho s^2 + c11 kx^2)(rho s^2 + c33 kx^2)
    const double rho = m.rho();
    const Complex rs2 = rho * s * s;
    const Complex kx2 = kx * kx;
    const Complex e1 = rs2 + m.c11() * kx2;
    const Complex e2 = rs2 + m.c33() * kx2;
    const double cc = m.c12() + m.c33();
    const Complex c4 = m.c22() * m.c33();
    const Complex c2 = kx2 * cc * cc - m.c22() * e1 - m.c33() * e2;
    const Complex c0 = e1 * e2;

    Matrix4cd companion = Matrix4cd::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(3, 2) = 1.0;
    companion(0, 3) = -c0 / c4;
    companion(1, 3) = 0.0;          // -c1/c4, odd coefficients vanish
    companion(2, 3) = -c2 / c4;
    companion(3, 3) = 0.0;          // -c3/c4
    Eigen::ComplexEigenSolver<Matrix4cd> es(companion, false);
    std::array<Complex, 4> roots;
    for (int i = 0; i < 4; ++i) roots[i] = es.eigenvalues()(i);

    KappaRootSet out;
    classify(roots, m, s, kx, out, false);
    return out;
}

}  // namespace detail

KappaRootSet kappa_roots(const MaterialParams& m, Complex s, Complex kx) {
    if (m.is_isotropic()) {
        const double cs2 = m.c33() / m.rho();
        const double cp2 = m.c11() / m.rho();
        const Complex ks = std::sqrt(kx * kx + s * s / cs2);
        const Complex kp = std::sqrt(kx * kx + s * s / cp2);
        KappaRootSet out;
        classify({ks, -ks, kp, -kp}, m, s, kx, out, true);
        return out;
    }
    return detail::kappa_roots_general(m, s, kx);
}

}  // namespace epml
