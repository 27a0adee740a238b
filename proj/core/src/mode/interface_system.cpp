#include "epml/mode/interface_system.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace epml {

namespace detail {

Mat4c interface_matrix_from_roots(const InterfaceSystem& sys, Complex ktilde,
                                  const KappaRootSet& top,
                                  const KappaRootSet& bottom) {
    const Complex i(0.0, 1.0);
    const Mat2 B1 = sys.top.B(), B2 = sys.bottom.B();
    const Mat2 C1 = sys.top.C(), C2 = sys.bottom.C();

    auto traction = [&](const Mat2& B, const Mat2& C, const KappaRoot& r) {
        // (kappa B + i ktilde C^T) phi
        std::array<Complex, 2> t;
        for (int row = 0; row < 2; ++row) {
            Complex acc(0.0);
            for (int col = 0; col < 2; ++col) {
                acc += (r.kappa * B[row][col] + i * ktilde * C[col][row]) *
                       r.phi[col];
            }
            t[row] = acc;
        }
        return t;
    };

    Mat4c M{};
    for (int j = 0; j < 2; ++j) {
        const KappaRoot& rt = top.minus_roots[j];
        const KappaRoot& rb = bottom.plus_roots[j];
        const auto tt = traction(B1, C1, rt);
        const auto tb = traction(B2, C2, rb);
        for (int row = 0; row < 2; ++row) {
            M[row][j] = rt.phi[row];
            M[row][2 + j] = -rb.phi[row];
            M[2 + row][j] = tt[row];
            M[2 + row][2 + j] = -tb[row];
        }
    }
    return M;
}

Complex det4(const Mat4c& m) {
    Eigen::Matrix4cd e;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) e(r, c) = m[r][c];
    return e.determinant();
}

}  // namespace detail

Mat4c interface_matrix(const InterfaceSystem& sys, Complex s, double kx,
                       std::optional<PmlStretch> stretch) {
    Complex ktilde(kx);
    if (stretch) ktilde = kx / pml_stretch_value(s, *stretch);
    const KappaRootSet top = kappa_roots(sys.top, s, ktilde);
    const KappaRootSet bottom = kappa_roots(sys.bottom, s, ktilde);
    return detail::interface_matrix_from_roots(sys, ktilde, top, bottom);
}

Complex interface_determinant(const InterfaceSystem& sys, Complex s, double kx,
                              std::optional<PmlStretch> stretch) {
    return detail::det4(interface_matrix(sys, s, kx, stretch));
}

InterfaceRootSearchResult interface_root_search(const InterfaceSystem& sys,
                                                double kx, double xi_lo,
                                                double xi_hi, int n_scan) {
    if (kx == 0.0) {
        throw std::invalid_argument("interface_root_search: kx must be nonzero");
    }
    if (n_scan < 8 || !(xi_hi > xi_lo)) {
        throw std::invalid_argument("interface_root_search: bad scan range");
    }
    const WaveSpeeds ws1 = sys.top.wave_speeds();
    const WaveSpeeds ws2 = sys.bottom.wave_speeds();
    const double c_ref = std::max(ws1.max(), ws2.max());
    const double eps = 1e-8 * std::abs(kx) * c_ref;

    auto f = [&](double xi) {
        return std::abs(interface_determinant(sys, Complex(eps, xi), kx));
    };

    const double dxi = (xi_hi - xi_lo) / (n_scan - 1);
    std::vector<double> g(n_scan);
    double gmax = 0.0;
    for (int i = 0; i < n_scan; ++i) {
        g[i] = f(xi_lo + i * dxi);
        gmax = std::max(gmax, g[i]);
    }

    // body-wave branch speeds are square-root branch points, and s = 0 is the
    // root-coalescence degeneracy; neither is an interface mode
    const std::array<double, 4> speeds = {ws1.csx, ws1.cpx, ws2.csx, ws2.cpx};
    auto near_branch = [&](double xi) {
        if (std::abs(xi) < 2.0 * dxi) return true;
        for (double c : speeds) {
            if (std::abs(std::abs(xi) - c * std::abs(kx)) < 2.0 * dxi) return true;
        }
        return false;
    };

    auto golden = [&](double a, double b) {
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(b));
             ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = f(d);
            }
        }
        return 0.5 * (a + b);
    };

    InterfaceRootSearchResult result;
    result.scan_max = gmax;
    result.epsilon = eps;
    for (int i = 1; i + 1 < n_scan; ++i) {
        if (!(g[i] < g[i - 1] && g[i] < g[i + 1])) continue;
        const double xi = golden(xi_lo + (i - 1) * dxi, xi_lo + (i + 1) * dxi);
        if (near_branch(xi)) continue;
        if (f(xi) < 1e-4 * gmax) result.roots.push_back(xi);
    }
    std::sort(result.roots.begin(), result.roots.end());
    return result;
}

}  // namespace epml
