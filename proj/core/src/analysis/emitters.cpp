#include "epml/analysis/emitters.hpp"

#include <cmath>

#include "epml/io/outputs.hpp"
#include "epml/mode/dispersion.hpp"
#include "epml/mode/pml_roots.hpp"

namespace epml {

void emit_slowness_csv(const std::string& path, const MaterialParams& m,
                       int n_angles) {
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < n_angles; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / n_angles;
        const double kx = std::cos(th), ky = std::sin(th);
        for (int b = 0; b < 2; ++b) {
            const auto kin = kinematics(
                m, kx, ky, b == 0 ? WaveBranch::QuasiP : WaveBranch::QuasiS);
            rows.push_back({th, kin.S[0], kin.S[1], static_cast<double>(b)});
        }
    }
    write_csv(path, "angle,Sx,Sy,branch", rows);
}

bool emit_geometric_csv(const std::string& path, const MaterialParams& m,
                        int n_angles) {
    const auto report = geometric_stability_check(m, n_angles);
    std::vector<std::vector<double>> rows;
    for (const auto& e : report.entries) {
        rows.push_back({e.angle,
                        e.branch == WaveBranch::QuasiP ? 0.0 : 1.0,
                        e.vpx_vgx, e.flagged ? 1.0 : 0.0});
    }
    write_csv(path, "angle,branch,vpx_vgx,flagged", rows);
    return report.admissible;
}

void emit_dispersion_roots_csv(const std::string& path, const MaterialParams& m,
                               int n_angles) {
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < n_angles; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / n_angles;
        const double kx = std::cos(th), ky = std::sin(th);
        const auto eig = body_wave_eigenvalues(m, kx, ky);
        rows.push_back({kx, ky, std::sqrt(eig[0]), std::sqrt(eig[1])});
    }
    write_csv(path, "kx,ky,omega_p,omega_s", rows);
}

void emit_interface_det_scan_csv(const std::string& path,
                                 const InterfaceSystem& sys, double kx,
                                 double xi_lo, double xi_hi, int n,
                                 double sigma, double alpha) {
    const WaveSpeeds w1 = sys.top.wave_speeds();
    const WaveSpeeds w2 = sys.bottom.wave_speeds();
    const double eps = 1e-8 * std::abs(kx) * std::max(w1.max(), w2.max());
    std::optional<PmlStretch> stretch;
    if (sigma > 0.0 || alpha > 0.0) stretch = PmlStretch{sigma, alpha};
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) {
        const double xi = xi_lo + (xi_hi - xi_lo) * i / (n - 1);
        const double f =
            std::abs(interface_determinant(sys, Complex(eps, xi), kx, stretch));
        rows.push_back({xi, f});
    }
    write_csv(path, "xi,absF", rows);
}

void emit_pml_root_map_csv(const std::string& path, double xi_lo, double xi_hi,
                           int n, double sigma, double alpha) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) {
        const double xi =
            n == 1 ? xi_lo : xi_lo + (xi_hi - xi_lo) * i / (n - 1);
        const auto roots = pml_root_map(xi, sigma, alpha);
        for (const Complex& s : roots) {
            rows.push_back({xi, sigma, alpha, s.real(), s.imag()});
        }
    }
    write_csv(path, "xi,sigma,alpha,re_s,im_s", rows);
}

}  // namespace epml
