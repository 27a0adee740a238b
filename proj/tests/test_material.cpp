#include <doctest.h>

#include <Eigen/Dense>

#include "epml/material.hpp"
#include "test_support.hpp"

using namespace epml;

namespace {

Eigen::Matrix4d to_eigen(const Mat4& m) {
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
    return e;
}

}  // namespace

TEST_CASE("orthotropic construction accepts the paper materials") {
    CHECK_NOTHROW(MaterialParams::orthotropic(1, 4, 20, 2, 3.8));
    CHECK_NOTHROW(MaterialParams::orthotropic(1, 1, 1, 1, 0));
}

TEST_CASE("ellipticity and density violations are rejected") {
    CHECK_THROWS_AS(MaterialParams::orthotropic(1, 1, 1, 1, 2),
                    EllipticityViolation);
    CHECK_THROWS_AS(MaterialParams::orthotropic(-1, 1, 1, 1, 0),
                    NonPositiveDensity);
    CHECK_THROWS_AS(MaterialParams::orthotropic(0, 1, 1, 1, 0),
                    NonPositiveDensity);
    CHECK_THROWS_AS(MaterialParams::orthotropic(1, -1, 1, 1, 0),
                    EllipticityViolation);
    // lambda = -mu sits exactly on the ellipticity boundary
    CHECK_THROWS_AS(MaterialParams::isotropic(1, 1, -1), EllipticityViolation);
}

TEST_CASE("isotropic wave speeds match Table 1 rows") {
    const auto ws1 = test::iso_layer1().wave_speeds();
    CHECK(ws1.csx == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(ws1.cpx == doctest::Approx(3.118).epsilon(1e-3));

    const auto ws4 = test::iso_layer2().wave_speeds();
    CHECK(ws4.csx == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ws4.cpx == doctest::Approx(5.196).epsilon(1e-3));

    // row 2 round-trip: build mu, lambda back from (rho, cs, cp)
    const double rho = 1.9, cs = 2.3, cp = 3.984;
    const double mu = rho * cs * cs;
    const double lambda = rho * cp * cp - 2.0 * mu;
    const auto ws = MaterialParams::isotropic(rho, mu, lambda).wave_speeds();
    CHECK(std::abs(ws.cpx - cp) < 1e-3);
    CHECK(std::abs(ws.csx - cs) < 1e-3);
    CHECK(ws.cpx == ws.cpy);
    CHECK(ws.csx == ws.csy);
}

TEST_CASE("orthotropic wave speeds are direct square roots") {
    const auto ws = test::ortho_layer1().wave_speeds();
    CHECK(ws.cpx == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ws.csx == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(ws.cpy == doctest::Approx(std::sqrt(20.0)).epsilon(1e-14));
    CHECK(ws.csy == ws.csx);

    // scaling all stiffnesses by 4 doubles every speed
    const auto w2 = MaterialParams::orthotropic(1, 16, 80, 8, 15.2).wave_speeds();
    CHECK(w2.cpx == doctest::Approx(2 * ws.cpx).epsilon(1e-14));
    CHECK(w2.cpy == doctest::Approx(2 * ws.cpy).epsilon(1e-14));
    CHECK(w2.csx == doctest::Approx(2 * ws.csx).epsilon(1e-14));
}

TEST_CASE("strain-energy matrix structure for mu = lambda = 1") {
    const auto P = MaterialParams::isotropic(1, 1, 1).strain_energy_matrix();
    CHECK(P[0][0] == 3.0);
    CHECK(P[1][1] == 1.0);
    CHECK(P[2][2] == 1.0);
    CHECK(P[3][3] == 3.0);
    CHECK(P[0][3] == 1.0);
    CHECK(P[1][2] == 1.0);
    // exact symmetry by construction
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(P[i][j] == P[j][i]);
}

TEST_CASE("strain-energy matrix is PSD for the paper pair and random media") {
    for (const auto& m : {test::iso_layer1(), test::iso_layer2()}) {
        const Eigen::Matrix4d P = to_eigen(m.strain_energy_matrix());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(P);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * P.norm());
    }
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const auto m = test::random_admissible(rng);
        const Eigen::Matrix4d P = to_eigen(m.strain_energy_matrix());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(P);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * P.norm());
        const auto ws = m.wave_speeds();
        CHECK(ws.cpx > 0.0);
        CHECK(ws.csx > 0.0);
        CHECK(ws.cpy > 0.0);
        CHECK(ws.csy > 0.0);
    }
}

TEST_CASE("isotropic constants map exactly to the lame parameters") {
    const auto m = MaterialParams::isotropic(2.0, 3.5, 1.25);
    CHECK(m.c11() == m.c22());
    CHECK(m.c33() == 3.5);
    CHECK(m.c12() == 1.25);
    CHECK(m.c11() == 2.0 * 3.5 + 1.25);
    CHECK(m.is_isotropic());
    CHECK_FALSE(test::ortho_layer1().is_isotropic());
}

TEST_CASE("axis swap exchanges c11 and c22") {
    const auto m = test::ortho_layer1().with_axes_swapped();
    CHECK(m.c11() == 20.0);
    CHECK(m.c22() == 4.0);
    CHECK(m.c33() == 2.0);
    CHECK(m.c12() == 3.8);
}
