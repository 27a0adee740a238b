#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "epml/mode/interface_system.hpp"
#include "epml/mode/kappa.hpp"
#include "test_support.hpp"

using namespace epml;

namespace {

Eigen::Matrix4cd to_eigen(const Mat4c& m) {
    Eigen::Matrix4cd e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
    return e;
}

Complex rand_s_right_half(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.05, 3.0), im(-3.0, 3.0);
    return {re(rng), im(rng)};
}

}  // namespace

TEST_CASE("pml stretch value") {
    CHECK(pml_stretch_value(Complex(1.0, 0.0), {2.0, 0.0}) == Complex(3.0, 0.0));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const Complex s = rand_s_right_half(rng);
        CHECK(pml_stretch_value(s, {0.0, 0.7}) == Complex(1.0, 0.0));
    }
    CHECK_THROWS_AS(pml_stretch_value(Complex(-0.5, 0.0), {1.0, 0.5}),
                    PoleAtMinusAlpha);
}

TEST_CASE("stretch monotonicity: Re(s Sx) >= Re(s) in the right half-plane") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> par(0.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const Complex s = rand_s_right_half(rng);
        const PmlStretch st{par(rng), par(rng)};
        const Complex ss = s * pml_stretch_value(s, st);
        CHECK(ss.real() >= s.real() - 1e-12 * std::abs(ss));
    }
}

TEST_CASE("isotropic kappa closed forms") {
    // cs = 1, cp = 2: rho=1, mu=1, lambda=2
    const auto m = MaterialParams::isotropic(1.0, 1.0, 2.0);
    SUBCASE("kx = 0, s = 1 gives {+-1, +-1/2}") {
        const auto roots = kappa_roots(m, Complex(1.0, 0.0), Complex(0.0, 0.0));
        CHECK(roots.minus_roots[0].kappa == Complex(-0.5, 0.0));
        CHECK(roots.minus_roots[1].kappa == Complex(-1.0, 0.0));
        CHECK(roots.plus_roots[0].kappa == Complex(0.5, 0.0));
        CHECK(roots.plus_roots[1].kappa == Complex(1.0, 0.0));
    }
    SUBCASE("kx = 1, s = 1 shear pair is +-sqrt(2)") {
        const auto mm = MaterialParams::isotropic(1.0, 1.0, 1.0);  // cs = 1
        const auto roots = kappa_roots(mm, Complex(1.0, 0.0), Complex(1.0, 0.0));
        const double rt2 = std::sqrt(2.0);
        CHECK(std::abs(roots.minus_roots[1].kappa - Complex(-rt2, 0.0)) < 1e-14);
        CHECK(std::abs(roots.plus_roots[1].kappa - Complex(rt2, 0.0)) < 1e-14);
    }
}

TEST_CASE("companion-matrix solver reproduces isotropic closed forms") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> kdist(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const auto m = test::random_isotropic(rng);
        const Complex s = rand_s_right_half(rng);
        const Complex kx(kdist(rng), 0.0);
        const auto closed = kappa_roots(m, s, kx);
        const auto general = detail::kappa_roots_general(m, s, kx);
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(closed.minus_roots[j].kappa -
                           general.minus_roots[j].kappa) <=
                  1e-10 * (1.0 + std::abs(closed.minus_roots[j].kappa)));
            CHECK(std::abs(closed.plus_roots[j].kappa -
                           general.plus_roots[j].kappa) <=
                  1e-10 * (1.0 + std::abs(closed.plus_roots[j].kappa)));
        }
    }
}

TEST_CASE("kappa root sets satisfy the residual bound") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> kdist(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const auto m = (i % 2 == 0) ? test::random_admissible(rng)
                                    : test::random_isotropic(rng);
        const Complex s = rand_s_right_half(rng);
        const Complex kx(kdist(rng), 0.0);
        const auto rs = kappa_roots(m, s, kx);
        for (const auto& pack : {rs.minus_roots, rs.plus_roots}) {
            for (const auto& root : pack) {
                const double bound =
                    1e-10 * (std::norm(s) + std::norm(kx) + std::norm(root.kappa));
                CHECK(detail::mode_residual(m, s, kx, root) <= bound + 1e-13);
            }
        }
    }
}

TEST_CASE("sign classification is stable along right-half-plane paths") {
    const auto m = test::ortho_layer1();
    const Complex kx(1.3, 0.0);
    for (int k = 0; k < 100; ++k) {
        const double t = k / 99.0;
        // path spiraling through the right half-plane
        const Complex s(0.2 + 2.0 * t, -3.0 + 6.0 * t);
        const auto rs = kappa_roots(m, s, kx);
        for (const auto& r : rs.minus_roots) CHECK(r.kappa.real() < 0.0);
        for (const auto& r : rs.plus_roots) CHECK(r.kappa.real() > 0.0);
    }
}

TEST_CASE("PML-stretched roots keep their sign (sign consistency)") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> par(0.0, 8.0);
    std::uniform_real_distribution<double> kdist(0.2, 2.0);
    for (int i = 0; i < 300; ++i) {
        const auto m = (i % 2 == 0) ? test::ortho_layer1()
                                    : test::random_isotropic(rng);
        const Complex s = rand_s_right_half(rng);
        const double kx = kdist(rng);
        const Complex ktilde = kx / pml_stretch_value(s, {par(rng), par(rng)});
        const auto rs = kappa_roots(m, s, ktilde);
        for (const auto& r : rs.minus_roots) CHECK(r.kappa.real() < 0.0);
        for (const auto& r : rs.plus_roots) CHECK(r.kappa.real() > 0.0);
    }
}

TEST_CASE("interface matrix: identical materials, sigma = 0") {
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer1()};
    const auto M = interface_matrix(sys, Complex(1.0, 0.0), 1.0);
    Eigen::Matrix4cd e = to_eigen(M);
    CHECK(e.allFinite());
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(e);
    const double cond = svd.singularValues()(0) / svd.singularValues()(3);
    CHECK(cond < 1e8);
}

TEST_CASE("sigma=0 stretch produces a bitwise-identical matrix") {
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer2()};
    const Complex s(0.7, 1.3);
    const auto plain = interface_matrix(sys, s, 1.1);
    const auto pml = interface_matrix(sys, s, 1.1, PmlStretch{0.0, 0.4});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(plain[i][j].real() == pml[i][j].real());
            CHECK(plain[i][j].imag() == pml[i][j].imag());
        }
    }
}

TEST_CASE("eigenvector scaling multiplies the determinant by the scales") {
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer2()};
    const Complex s(0.8, -0.9);
    const Complex kx(1.0, 0.0);
    auto top = kappa_roots(sys.top, s, kx);
    auto bot = kappa_roots(sys.bottom, s, kx);
    const Complex d0 =
        detail::det4(detail::interface_matrix_from_roots(sys, kx, top, bot));
    const std::array<Complex, 4> scales{Complex(2.0, 0.0), Complex(0.0, 3.0),
                                        Complex(-1.5, 0.5), Complex(0.25, 0.0)};
    auto top2 = top;
    auto bot2 = bot;
    for (int j = 0; j < 2; ++j) {
        for (auto& c : top2.minus_roots[j].phi) c *= scales[j];
        for (auto& c : bot2.plus_roots[j].phi) c *= scales[2 + j];
    }
    const Complex d1 =
        detail::det4(detail::interface_matrix_from_roots(sys, kx, top2, bot2));
    const Complex expect = d0 * scales[0] * scales[1] * scales[2] * scales[3];
    CHECK(std::abs(d1 - expect) <= 1e-10 * std::abs(expect));
}

TEST_CASE("determinant is homogeneous of degree two") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> adist(0.1, 10.0);
    std::uniform_real_distribution<double> kdist(0.2, 2.0);
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer2()};
    const InterfaceSystem sys2{test::ortho_layer1(), test::ortho_layer2()};
    for (int i = 0; i < 500; ++i) {
        const auto& S = (i % 2 == 0) ? sys : sys2;
        const Complex s = rand_s_right_half(rng);
        const double kx = kdist(rng);
        const double a = adist(rng);
        const Complex f1 = interface_determinant(S, s, kx);
        const Complex f2 = interface_determinant(S, a * s, a * kx);
        CHECK(std::abs(f2 - a * a * f1) <= 1e-10 * std::abs(a * a * f1));
    }
}

TEST_CASE("paper isotropic pair: determinant nonzero at s = 1, kx = 1") {
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer2()};
    const Complex f = interface_determinant(sys, Complex(1.0, 0.0), 1.0);
    CHECK(std::abs(f) > 0.0);
    // regression pin: |F(1, 1)| for this isotropic pair, frozen value
    CHECK(std::abs(f) == doctest::Approx(33.61450398917).epsilon(1e-8));
}

TEST_CASE("PML determinant stays nonzero in the right half-plane") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> sig(1e-3, 10.0), al(0.0, 5.0);
    std::uniform_real_distribution<double> kdist(0.2, 2.0);
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer2()};
    double min_abs = 1e300;
    for (int i = 0; i < 10000; ++i) {
        const Complex s = rand_s_right_half(rng);
        const double kx = kdist(rng);
        const Complex f =
            interface_determinant(sys, s, kx, PmlStretch{sig(rng), al(rng)});
        min_abs = std::min(min_abs, std::abs(f));
    }
    CHECK(min_abs > 1e-8);
}

TEST_CASE("interface root search: identical materials give an empty list") {
    const InterfaceSystem sys{test::iso_layer1(), test::iso_layer1()};
    const auto res = interface_root_search(sys, 1.0, -10.0, 10.0, 2001);
    CHECK(res.roots.empty());
}

TEST_CASE("interface root search finds the Stoneley mode and scales with kx") {
    const InterfaceSystem sys{test::stoneley_top(), test::stoneley_bottom()};
    // subsonic window below the slower shear speed sqrt(2.5/3.2)
    const auto res1 = interface_root_search(sys, 1.0, 0.2, 0.8835, 4001);
    REQUIRE(res1.roots.size() == 1);
    CHECK(res1.roots[0] == doctest::Approx(0.8811261998).epsilon(1e-6));

    // self-consistency of the search
    const WaveSpeeds w1 = sys.top.wave_speeds(), w2 = sys.bottom.wave_speeds();
    const double eps = 1e-8 * std::max(w1.max(), w2.max());
    const double froot = std::abs(
        interface_determinant(sys, Complex(eps, res1.roots[0]), 1.0));
    CHECK(froot < 1e-4 * res1.scan_max);

    const auto res2 = interface_root_search(sys, 2.0, 0.4, 2.0 * 0.8835, 4001);
    REQUIRE(res2.roots.size() == 1);
    CHECK(res2.roots[0] == doctest::Approx(2.0 * res1.roots[0]).epsilon(1e-6));
}

TEST_CASE("the Stoneley root is dissipated under the PML map") {
    const InterfaceSystem sys{test::stoneley_top(), test::stoneley_bottom()};
    const auto res = interface_root_search(sys, 1.0, 0.2, 0.8835, 4001);
    REQUIRE(res.roots.size() == 1);
    // with stretching, no roots remain near the imaginary axis
    const double xi = res.roots[0];
    const double f0 = std::abs(interface_determinant(
        sys, Complex(res.epsilon, xi), 1.0));
    const double fp = std::abs(interface_determinant(
        sys, Complex(res.epsilon, xi), 1.0, PmlStretch{1.0, 0.05}));
    CHECK(fp > 100.0 * f0);
}
