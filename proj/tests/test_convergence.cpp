#include <doctest.h>

#include <cmath>

#include "epml/solver/energy.hpp"
#include "epml/solver/runner.hpp"
#include "epml/solver/sources.hpp"
#include "epml/solver/time_integrator.hpp"
#include "test_support.hpp"

using namespace epml;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Manufactured two-layer solution, periodic in x:
//   u = (sin(k x) f1(y), cos(k x) f2(y)) cos(omega t)
// with layer-wise f chosen so displacement and traction are continuous at
// y = 0. The bottom layer uses exponentials; the top layer is the quadratic
// extension matching value and traction.
struct Manufactured {
    MaterialParams m1 = test::iso_layer1();
    MaterialParams m2 = test::iso_layer2();
    double k = 2.0 * kTwoPi / 4.0;  // two periods over Lx = 4
    double omega = 2.1;
    // bottom-layer profiles
    double a1 = 0.9, b1 = 0.5;    // f1 = a1 exp(b1 y)
    double a2 = -0.6, b2 = -0.4;  // f2 = a2 exp(b2 y)
    // top-layer quadratic extras
    double h1 = 0.3, h2 = -0.2;

    // traction-matching linear coefficients for the top layer
    double g1() const {
        return (m2.c33() * a1 * b1 - (m2.c33() - m1.c33()) * k * a2) / m1.c33();
    }
    double g2() const {
        return (m2.c22() * a2 * b2 + (m2.c12() - m1.c12()) * k * a1) / m1.c22();
    }

    double f1(int layer, double y) const {
        if (layer == 1) return a1 * std::exp(b1 * y);
        return a1 + g1() * y + h1 * y * y;
    }
    double f2(int layer, double y) const {
        if (layer == 1) return a2 * std::exp(b2 * y);
        return a2 + g2() * y + h2 * y * y;
    }
    double df1(int layer, double y) const {
        if (layer == 1) return a1 * b1 * std::exp(b1 * y);
        return g1() + 2.0 * h1 * y;
    }
    double df2(int layer, double y) const {
        if (layer == 1) return a2 * b2 * std::exp(b2 * y);
        return g2() + 2.0 * h2 * y;
    }
    double ddf1(int layer, double y) const {
        if (layer == 1) return a1 * b1 * b1 * std::exp(b1 * y);
        return 2.0 * h1;
    }
    double ddf2(int layer, double y) const {
        if (layer == 1) return a2 * b2 * b2 * std::exp(b2 * y);
        return 2.0 * h2;
    }

    const MaterialParams& mat(int layer) const { return layer == 0 ? m1 : m2; }

    std::array<double, 2> displacement(int layer, double x, double y,
                                       double t) const {
        const double c = std::cos(omega * t);
        return {std::sin(k * x) * f1(layer, y) * c,
                std::cos(k * x) * f2(layer, y) * c};
    }

    std::array<double, 2> force(int layer, double x, double y, double t) const {
        const MaterialParams& m = mat(layer);
        const double cc = m.c12() + m.c33();
        const double r1 = -m.rho() * omega * omega * f1(layer, y) +
                          m.c11() * k * k * f1(layer, y) +
                          cc * k * df2(layer, y) - m.c33() * ddf1(layer, y);
        const double r2 = -m.rho() * omega * omega * f2(layer, y) +
                          m.c33() * k * k * f2(layer, y) -
                          cc * k * df1(layer, y) - m.c22() * ddf2(layer, y);
        const double c = std::cos(omega * t);
        return {std::sin(k * x) * r1 * c, std::cos(k * x) * r2 * c};
    }

    // characteristic-face data g = Z p +- T_y at the outer faces
    std::array<double, 2> face_data(int layer, Face face, double x, double y,
                                    double t) const {
        const MaterialParams& m = mat(layer);
        const double c = std::cos(omega * t);
        const double s = -omega * std::sin(omega * t);
        const double p1 = std::sin(k * x) * f1(layer, y) * s;
        const double p2 = std::cos(k * x) * f2(layer, y) * s;
        // T_y = C^T du/dx + B du/dy
        const double ux1 = k * std::cos(k * x) * f1(layer, y) * c;
        const double ux2 = -k * std::sin(k * x) * f2(layer, y) * c;
        const double uy1 = std::sin(k * x) * df1(layer, y) * c;
        const double uy2 = std::cos(k * x) * df2(layer, y) * c;
        const double ty1 = m.c33() * (ux2 + uy1);
        const double ty2 = m.c12() * ux1 + m.c22() * uy2;
        const WaveSpeeds ws = m.wave_speeds();
        const double z1 = m.rho() * ws.csy, z2 = m.rho() * ws.cpy;
        const double sgn = (face == Face::Top) ? 1.0 : -1.0;
        return {z1 * p1 + sgn * ty1, z2 * p2 + sgn * ty2};
    }
};

double run_error(const Manufactured& mf, int n, double t_final) {
    ScenarioConfig cfg;
    cfg.name = "manufactured";
    cfg.x_min = 0.0;
    cfg.x_max = 4.0;
    cfg.nx = n;
    cfg.layers = {LayerSpec{0.0, 1.0, n / 2 + 1, mf.m1},
                  LayerSpec{-1.0, 0.0, n / 2 + 1, mf.m2}};
    cfg.left = cfg.right = BoundaryKind::Periodic;
    cfg.time.t_final = t_final;
    cfg.time.output_dt = t_final;
    Discretization d = build_discretization(cfg);
    d.extra_force = [&mf](int layer, double x, double y, double t) {
        return mf.force(layer, x, y, t);
    };
    d.boundary_data = [&mf](int layer, Face face, double x, double y, double t) {
        return mf.face_data(layer, face, x, y, t);
    };

    std::vector<double> y = zero_state(d);
    for (int li = 0; li < 2; ++li) {
        const LayerDisc& L = d.layers[li];
        auto v = d.view<double>(li, y.data());
        for (int ir = 0; ir < L.nr(); ++ir) {
            for (int iq = 0; iq < L.nq(); ++iq) {
                const std::size_t i = static_cast<std::size_t>(ir) * L.nq() + iq;
                const auto u = mf.displacement(li, L.grid.x(iq, ir),
                                               L.grid.y(iq, ir), 0.0);
                v.u1[i] = u[0];
                v.u2[i] = u[1];
            }
        }
    }

    Rk4Stepper st(d);
    const int steps = static_cast<int>(std::ceil(t_final / d.dt));
    const double dt = t_final / steps;
    double t = 0.0;
    for (int k = 0; k < steps; ++k) {
        st.step(d, t, dt, y);
        t += dt;
    }

    // H-norm of the displacement error
    double acc = 0.0;
    for (int li = 0; li < 2; ++li) {
        const LayerDisc& L = d.layers[li];
        const auto v = d.view<const double>(li, y.data());
        for (int ir = 0; ir < L.nr(); ++ir) {
            for (int iq = 0; iq < L.nq(); ++iq) {
                const std::size_t i = static_cast<std::size_t>(ir) * L.nq() + iq;
                const auto u = mf.displacement(li, L.grid.x(iq, ir),
                                               L.grid.y(iq, ir), t_final);
                const double w = L.opq.norm_weight(iq) * L.opr.norm_weight(ir) *
                                 L.grid.jac.data[i];
                const double e1 = v.u1[i] - u[0];
                const double e2 = v.u2[i] - u[1];
                acc += w * (e1 * e1 + e2 * e2);
            }
        }
    }
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("manufactured solution satisfies the interface conditions") {
    const Manufactured mf;
    // displacement continuity at y = 0
    for (double x : {0.3, 1.7, 3.9}) {
        const auto ut = mf.displacement(0, x, 0.0, 0.4);
        const auto ub = mf.displacement(1, x, 0.0, 0.4);
        CHECK(ut[0] == doctest::Approx(ub[0]).epsilon(1e-13));
        CHECK(ut[1] == doctest::Approx(ub[1]).epsilon(1e-13));
    }
    // traction continuity: T_y = (c33 (f1' - k f2) sin(kx),
    //                             (c12 k f1 + c22 f2') cos(kx)) cos(wt)
    auto ty_factors = [&](int layer) {
        const MaterialParams& m = mf.mat(layer);
        return std::array<double, 2>{
            m.c33() * (mf.df1(layer, 0.0) - mf.k * mf.f2(layer, 0.0)),
            m.c12() * mf.k * mf.f1(layer, 0.0) + m.c22() * mf.df2(layer, 0.0)};
    };
    const auto top = ty_factors(0), bot = ty_factors(1);
    CHECK(top[0] == doctest::Approx(bot[0]).epsilon(1e-12));
    CHECK(top[1] == doctest::Approx(bot[1]).epsilon(1e-12));
}

TEST_CASE("two-layer manufactured solution converges at order >= 3") {
    const Manufactured mf;
    const double T = 0.25;
    const double e1 = run_error(mf, 24, T);
    const double e2 = run_error(mf, 48, T);
    const double e3 = run_error(mf, 96, T);
    const double r1 = std::log2(e1 / e2);
    const double r2 = std::log2(e2 / e3);
    INFO("errors ", e1, " ", e2, " ", e3, " rates ", r1, " ", r2);
    CHECK(r2 >= 3.0);
    CHECK(r1 >= 2.7);  // preasymptotic leeway on the coarsest pair
    CHECK(e3 < e1);
}
