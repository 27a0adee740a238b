#include <doctest.h>

#include <cmath>
#include <vector>

#include "epml/sbp/field2d.hpp"
#include "epml/sbp/operator.hpp"

using namespace epml;

namespace {

double sbp_identity_error(const SbpOperator1D& op) {
    const int n = op.n();
    const auto D = op.dense();
    const auto& H = op.norm_weights();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double b = 0.0;
            if (!op.is_periodic()) {
                if (i == 0 && j == 0) b = -1.0;
                if (i == n - 1 && j == n - 1) b = 1.0;
            }
            const double m = H[i] * D[static_cast<std::size_t>(i) * n + j] +
                             H[j] * D[static_cast<std::size_t>(j) * n + i] - b;
            worst = std::max(worst, std::abs(m));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("SBP identity H D + D^T H = B to round-off") {
    for (int n : {16, 32, 64, 128}) {
        const auto op = build_sbp_4(n, 1.0 / (n - 1));
        CHECK(sbp_identity_error(op) <= 1e-14);
    }
    // periodic variant: B = 0
    const auto per = SbpOperator1D::periodic(32, 1.0 / 32);
    CHECK(sbp_identity_error(per) <= 1e-14);
}

TEST_CASE("grid too small is rejected") {
    CHECK_THROWS_AS(build_sbp_4(11, 0.1), GridTooSmall);
    CHECK_NOTHROW(build_sbp_4(12, 0.1));
}

TEST_CASE("constants are annihilated exactly") {
    const int n = 32;
    const auto op = build_sbp_4(n, 1.0 / (n - 1));
    std::vector<double> u(n, 3.7), du(n);
    op.apply(u.data(), du.data());
    for (double v : du) CHECK(v == 0.0);

    const auto per = SbpOperator1D::periodic(n, 1.0 / n);
    per.apply(u.data(), du.data());
    for (double v : du) CHECK(v == 0.0);
}

TEST_CASE("first-degree exactness at every node") {
    const int n = 32;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp_4(n, h);
    std::vector<double> u(n), du(n);
    for (int i = 0; i < n; ++i) u[i] = i * h;
    op.apply(u.data(), du.data());
    for (double v : du) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("polynomial exactness: interior degree 4, boundary degree 2") {
    const int n = 40;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp_4(n, h);
    for (int p = 0; p <= 4; ++p) {
        std::vector<double> u(n), du(n);
        for (int i = 0; i < n; ++i) u[i] = std::pow(i * h, p);
        op.apply(u.data(), du.data());
        for (int i = 0; i < n; ++i) {
            const double expect = p == 0 ? 0.0 : p * std::pow(i * h, p - 1);
            const bool interior = (i >= 4 && i < n - 4);
            if (interior || p <= 2) {
                CHECK(std::abs(du[i] - expect) <= 1e-12);
            }
        }
    }
}

TEST_CASE("norm weights are positive and sum to the interval length") {
    const int n = 50;
    const double h = 2.5 / (n - 1);
    const auto op = build_sbp_4(n, h);
    double sum = 0.0;
    for (double w : op.norm_weights()) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("apply_transpose_H equals the dense transpose") {
    const int n = 16;
    const auto op = build_sbp_4(n, 1.0 / (n - 1));
    const auto D = op.dense();
    const auto& H = op.norm_weights();
    std::vector<double> u(n), got(n);
    for (int i = 0; i < n; ++i) u[i] = std::sin(2.1 * i) + 0.3 * i;
    op.apply_transpose_H(u.data(), got.data());
    for (int i = 0; i < n; ++i) {
        double expect = 0.0;
        for (int j = 0; j < n; ++j) {
            expect += D[static_cast<std::size_t>(j) * n + i] * H[j] * u[j];
        }
        CHECK(got[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("second derivative: constant coefficient quadratic") {
    const int n = 32;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp_4(n, h);
    std::vector<double> b(n, 1.0), u(n);
    for (int i = 0; i < n; ++i) u[i] = (i * h) * (i * h);
    const auto d2 = second_derivative(op, b, u);
    for (int i = 4; i < n - 4; ++i) {
        CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-11));
    }
}

TEST_CASE("second derivative: variable coefficient product rule") {
    // b = 1 + x^2, u = x: D(b Du) = db/dx = 2x in the interior
    const int n = 48;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp_4(n, h);
    std::vector<double> b(n), u(n);
    for (int i = 0; i < n; ++i) {
        const double x = i * h;
        b[i] = 1.0 + x * x;
        u[i] = x;
    }
    const auto d2 = second_derivative(op, b, u);
    for (int i = 4; i < n - 4; ++i) {
        CHECK(std::abs(d2[i] - 2.0 * i * h) <= 1e-11);
    }
}

TEST_CASE("second derivative: fourth-order interior convergence") {
    auto interior_error = [](int n) {
        const double h = 1.0 / (n - 1);
        const auto op = build_sbp_4(n, h);
        std::vector<double> b(n, 1.0), u(n);
        for (int i = 0; i < n; ++i) u[i] = std::sin(2.0 * M_PI * i * h);
        const auto d2 = second_derivative(op, b, u);
        double err = 0.0;
        for (int i = 8; i < n - 8; ++i) {
            const double exact =
                -4.0 * M_PI * M_PI * std::sin(2.0 * M_PI * i * h);
            err = std::max(err, std::abs(d2[i] - exact));
        }
        return err;
    };
    const double e32 = interior_error(33);
    const double e64 = interior_error(65);
    const double e128 = interior_error(129);
    const double r1 = std::log2(e32 / e64);
    const double r2 = std::log2(e64 / e128);
    CHECK(r1 > 3.5);
    CHECK(r1 < 4.5);
    CHECK(r2 > 3.5);
    CHECK(r2 < 4.5);
}

TEST_CASE("mixed derivative: bilinear field with constant coefficient") {
    const int n = 16;
    const auto opx = build_sbp_4(n, 1.0 / (n - 1));
    const auto opy = build_sbp_4(n, 1.0 / (n - 1));
    Field2D u(n, n), c(n, n, 2.5);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            u(ix, iy) = (ix / double(n - 1)) * (iy / double(n - 1));
        }
    }
    const auto out = apply_mixed_derivative(opx, opy, c, u);
    for (double v : out.data) CHECK(v == doctest::Approx(2.5).epsilon(1e-11));

    Field2D zero(n, n);
    const auto z = apply_mixed_derivative(opx, opy, c, zero);
    for (double v : z.data) CHECK(v == 0.0);
}

TEST_CASE("mixed derivative adjoint identity reduces to boundary terms") {
    // <v, Dx(c Dy u)>_H + <Dy(c Dx... transposed partner evaluated directly:
    // with Hx Dx = Bx - Dx^T Hx the volume terms cancel against the partner,
    // leaving x-boundary terms of (c Dy u) weighted by v.
    const int n = 14;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp_4(n, h);
    Field2D u(n, n), v(n, n), c(n, n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double x = ix * h, y = iy * h;
            u(ix, iy) = std::sin(1.3 * x + 0.2) * std::cos(0.9 * y);
            v(ix, iy) = std::cos(2.1 * x) * std::sin(1.7 * y + 0.4);
            c(ix, iy) = 1.0 + 0.3 * x * y;
        }
    }
    const auto& H = op.norm_weights();
    const Field2D m1 = apply_mixed_derivative(op, op, c, u);  // Dx(c Dy u)
    Field2D dyu, dxv;
    apply_dy(op, u, dyu);
    apply_dx(op, v, dxv);
    // lhs = <v, Dx(c Dy u)>_H, partner = <c Dx v, Dy u>_H
    double lhs = 0.0, partner = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double w = H[ix] * H[iy];
            lhs += w * v(ix, iy) * m1(ix, iy);
            partner += w * c(ix, iy) * dxv(ix, iy) * dyu(ix, iy);
        }
    }
    // boundary terms: sum_y Hy [ v (c Dy u) ]_{x=0}^{x=1}
    double boundary = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        boundary += H[iy] * (v(n - 1, iy) * c(n - 1, iy) * dyu(n - 1, iy) -
                             v(0, iy) * c(0, iy) * dyu(0, iy));
    }
    CHECK(lhs + partner == doctest::Approx(boundary).epsilon(1e-11));
}
