#include "epml/mode/dispersion.hpp"

#include <cmath>

namespace epml {

namespace {

// Coefficients of F(s,k) = s^4 + (a/rho) s^2 + b/rho^2 for real k.
struct QuarticCoeffs {
    double a;
    double b;
};

QuarticCoeffs quartic_coeffs(const MaterialParams& m, double kx, double ky) {
    const double kx2 = kx * kx, ky2 = ky * ky;
    const double a = (m.c11() + m.c33()) * kx2 + (m.c22() + m.c33()) * ky2;
    const double cross = m.c11() * m.c22() + m.c33() * m.c33() -
                         (m.c33() + m.c12()) * (m.c33() + m.c12());
    const double b = m.c11() * m.c33() * kx2 * kx2 +
                     m.c22() * m.c33() * ky2 * ky2 + cross * kx2 * ky2;
    return {a, b};
}

}  // namespace

Complex dispersion_F(const MaterialParams& m, Complex s, Complex kx, Complex ky) {
    const Complex kx2 = kx * kx, ky2 = ky * ky;
    const Complex s2 = s * s;
    const double rho = m.rho();
    const Complex a = (m.c11() + m.c33()) * kx2 + (m.c22() + m.c33()) * ky2;
    const double cross = m.c11() * m.c22() + m.c33() * m.c33() -
                         (m.c33() + m.c12()) * (m.c33() + m.c12());
    const Complex b = m.c11() * m.c33() * kx2 * kx2 +
                      m.c22() * m.c33() * ky2 * ky2 + cross * kx2 * ky2;
    return s2 * s2 + (a / rho) * s2 + b / (rho * rho);
}

std::array<double, 2> body_wave_eigenvalues(const MaterialParams& m, double kx,
                                            double ky) {
    if (!(kx * kx + ky * ky > 0.0)) {
        throw std::invalid_argument("body_wave_eigenvalues: |k| must be > 0");
    }
    const auto [a, b] = quartic_coeffs(m, kx, ky);
    const double rho = m.rho();
    // -s^2 solves rho^2 z^2 - rho a z + b = 0; ellipticity keeps the
    // discriminant nonnegative and both roots positive.
    double disc = a * a - 4.0 * b;
    if (disc < 0.0) disc = 0.0;  // round-off at branch coincidence
    const double sq = std::sqrt(disc);
    return {(a + sq) / (2.0 * rho), (a - sq) / (2.0 * rho)};
}

KinematicQuantities kinematics(const MaterialParams& m, double kx, double ky,
                               WaveBranch branch) {
    const double knorm = std::hypot(kx, ky);
    if (!(knorm > 0.0)) {
        throw std::invalid_argument("kinematics: |k| must be > 0");
    }
    const auto eigs = body_wave_eigenvalues(m, kx, ky);
    if (eigs[0] - eigs[1] <= 1e-12 * std::max(1.0, eigs[0])) {
        throw DegenerateBranch(
            "kinematics: coincident eigenvalues, group velocity ill-defined");
    }
    const double lambda = (branch == WaveBranch::QuasiP) ? eigs[0] : eigs[1];
    const double omega = std::sqrt(lambda);

    const double rho = m.rho();
    const double cross = m.c11() * m.c22() + m.c33() * m.c33() -
                         (m.c33() + m.c12()) * (m.c33() + m.c12());
    // F(omega, k) = omega^4 - (a/rho) omega^2 + b/rho^2
    const auto [a, b] = quartic_coeffs(m, kx, ky);
    (void)b;
    const double F_om = 4.0 * omega * omega * omega - 2.0 * (a / rho) * omega;
    const double da_dkx = 2.0 * (m.c11() + m.c33()) * kx;
    const double da_dky = 2.0 * (m.c22() + m.c33()) * ky;
    const double db_dkx =
        4.0 * m.c11() * m.c33() * kx * kx * kx + 2.0 * cross * kx * ky * ky;
    const double db_dky =
        4.0 * m.c22() * m.c33() * ky * ky * ky + 2.0 * cross * ky * kx * kx;
    const double F_kx = -(omega * omega / rho) * da_dkx + db_dkx / (rho * rho);
    const double F_ky = -(omega * omega / rho) * da_dky + db_dky / (rho * rho);

    KinematicQuantities out;
    out.omega = omega;
    out.K = {kx / knorm, ky / knorm};
    out.Vp = {omega / kx, omega / ky};
    out.S = {kx / omega, ky / omega};
    out.Vg = {-F_kx / F_om, -F_ky / F_om};
    return out;
}

GeometricCheckReport geometric_stability_check(const MaterialParams& m,
                                               int n_angles) {
    if (n_angles < 4) {
        throw std::invalid_argument("geometric_stability_check: n_angles >= 4");
    }
    GeometricCheckReport report;
    report.entries.reserve(2 * static_cast<std::size_t>(n_angles));
    report.admissible = true;
    const double two_pi = 2.0 * M_PI;
    for (int j = 0; j < n_angles; ++j) {
        const double angle = two_pi * (j + 0.5) / n_angles;
        const double kx = std::cos(angle), ky = std::sin(angle);
        for (WaveBranch branch : {WaveBranch::QuasiP, WaveBranch::QuasiS}) {
            const auto kin = kinematics(m, kx, ky, branch);
            const double prod = kin.Vp[0] * kin.Vg[0];
            const bool flagged = prod < 0.0;
            if (flagged) report.admissible = false;
            report.entries.push_back({angle, branch, prod, flagged});
        }
    }
    return report;
}

}  // namespace epml
