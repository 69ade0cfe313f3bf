#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kapitza/linalg.hpp"

using namespace kapitza;

TEST_CASE("laplacian stencil on the 3-point grid") {
    Grid1D g(1.0, 3); // h = 1
    MatrixXcd m = build_laplacian(g);
    REQUIRE(m.rows() == 3);
    CHECK(m(0, 0) == cplx{1.0, 0.0});
    CHECK(m(1, 1) == cplx{1.0, 0.0});
    CHECK(m(0, 1) == cplx{-0.5, 0.0});
    CHECK(m(1, 0) == cplx{-0.5, 0.0});
    CHECK(m(0, 2) == cplx{0.0, 0.0});
    CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("laplacian annihilates constants away from the boundary") {
    Grid1D g(10.0, 101);
    MatrixXcd m = build_laplacian(g);
    VectorXcd ones = VectorXcd::Ones(g.point_count);
    VectorXcd r = m * ones;
    for (int j = 2; j + 2 < g.point_count; ++j)
        CHECK(std::abs(r[j]) < 1e-12);
}

TEST_CASE("free laplacian eigenvalues approximate the particle in a box") {
    Grid1D g(20.0, 401); // h = 0.1
    auto pairs = eig_dense(build_laplacian(g));
    for (int n = 1; n <= 3; ++n) {
        const double exact = 0.5 * std::pow(M_PI * n / (2.0 * g.half_width), 2);
        const double got = pairs[n - 1].value.real();
        CHECK(std::abs(got - exact) < 0.02 * exact);
    }
}

TEST_CASE("laplacian truncation error is second order") {
    // apply to exp(-x^2) (vanishing at the ends) and compare to -1/2 f''
    auto max_err = [](int nx) {
        Grid1D g(10.0, nx);
        MatrixXcd m = build_laplacian(g);
        VectorXcd f(nx);
        for (int j = 0; j < nx; ++j) f[j] = std::exp(-g.node(j) * g.node(j));
        VectorXcd lf = m * f;
        double err = 0.0;
        for (int j = 1; j + 1 < nx; ++j) {
            const double x = g.node(j);
            const double exact = -0.5 * (4.0 * x * x - 2.0) * std::exp(-x * x);
            err = std::max(err, std::abs(lf[j] - exact));
        }
        return err;
    };
    const double e1 = max_err(201), e2 = max_err(401);
    const double order = std::log2(e1 / e2); // h halves between the two
    CHECK(order >= 1.9);
}

TEST_CASE("eig_dense on tiny fixed matrices") {
    SECTION("identity") {
        auto pairs = eig_dense(MatrixXcd::Identity(2, 2));
        CHECK(pairs[0].value == cplx{1.0, 0.0});
        CHECK(pairs[1].value == cplx{1.0, 0.0});
    }
    SECTION("rotation generator has +-i") {
        MatrixXcd m(2, 2);
        m << 0, 1, -1, 0;
        auto pairs = eig_dense(m);
        // rounding noise in Re makes the +-i order unspecified
        const double d01 = std::abs(pairs[0].value - cplx{0.0, -1.0}) +
                           std::abs(pairs[1].value - cplx{0.0, 1.0});
        const double d10 = std::abs(pairs[0].value - cplx{0.0, 1.0}) +
                           std::abs(pairs[1].value - cplx{0.0, -1.0});
        CHECK(std::min(d01, d10) < 1e-14);
    }
}

TEST_CASE("eig_dense residuals and Hermitian reality") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MatrixXcd b(50, 50);
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) b(i, j) = cplx{d(rng), d(rng)};

    SECTION("Hermitian sample has a real spectrum") {
        MatrixXcd a = b + b.adjoint().eval();
        auto pairs = eig_dense(a);
        const double fro = a.norm();
        for (const auto& p : pairs) {
            CHECK(std::abs(p.value.imag()) <= 1e-10 * fro);
            CHECK(p.residual_norm <= 1e-8 * fro);
        }
    }
    SECTION("general sample meets the residual bound") {
        auto pairs = eig_dense(b);
        const double fro = b.norm();
        for (const auto& p : pairs) {
            CHECK(p.residual_norm <= 1e-8 * fro);
            CHECK(std::abs(p.vector.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("eig_dense sorts by real part, ties by imaginary part") {
    MatrixXcd m = MatrixXcd::Zero(3, 3);
    m(0, 0) = cplx{1.0, 2.0};
    m(1, 1) = cplx{1.0, -2.0};
    m(2, 2) = cplx{0.0, 0.0};
    auto pairs = eig_dense(m);
    CHECK(pairs[0].value == cplx{0.0, 0.0});
    CHECK(pairs[1].value == cplx{1.0, -2.0});
    CHECK(pairs[2].value == cplx{1.0, 2.0});
}

TEST_CASE("eig_dense rejects oversized matrices") {
    CHECK_THROWS_AS(eig_dense(MatrixXcd::Identity(5, 5), 4), DimensionTooLarge);
}

TEST_CASE("trapezoid quadrature") {
    SECTION("constant on [-2,2]") {
        Grid1D g(2.0, 41);
        VectorXd v = VectorXd::Ones(41);
        CHECK(integrate_trapezoid(v, g) == Catch::Approx(4.0).margin(1e-14));
    }
    SECTION("odd function integrates to zero") {
        Grid1D g(5.0, 201);
        VectorXd v(201);
        for (int j = 0; j < 201; ++j) v[j] = std::pow(g.node(j), 3);
        CHECK(std::abs(integrate_trapezoid(v, g)) < 1e-12);
    }
    SECTION("Gaussian moment integral") {
        const double beta = 0.02;
        Grid1D g(40.0, 1601);
        VectorXd v(1601);
        for (int j = 0; j < 1601; ++j) {
            const double x = g.node(j);
            v[j] = x * x * std::exp(-2.0 * beta * x * x);
        }
        const double exact = 1.0 / (4.0 * beta) * std::sqrt(M_PI / (2.0 * beta));
        CHECK(integrate_trapezoid(v, g) ==
              Catch::Approx(exact).epsilon(1e-3)); // 110.78 within 0.1%
    }
    SECTION("length mismatch throws") {
        Grid1D g(1.0, 11);
        VectorXd v = VectorXd::Zero(10);
        CHECK_THROWS_AS(integrate_trapezoid(v, g), NumericalError);
    }
    SECTION("affine exactness under refinement (order >= 1.9 on x^2)") {
        auto err = [](int nx) {
            Grid1D g(1.0, nx);
            VectorXd v(nx);
            for (int j = 0; j < nx; ++j) v[j] = g.node(j) * g.node(j);
            return std::abs(integrate_trapezoid(v, g) - 2.0 / 3.0);
        };
        CHECK(std::log2(err(101) / err(201)) >= 1.9);
    }
}

TEST_CASE("rk4 step") {
    SECTION("zero rhs leaves the state unchanged") {
        VectorXcd y(2);
        y << cplx{1.0, 2.0}, cplx{-3.0, 0.5};
        auto out = rk4_step(y, 0.0, 0.1, [](double, const VectorXcd& v) {
            return VectorXcd::Zero(v.size()).eval();
        });
        CHECK((out - y).norm() == 0.0);
    }
    SECTION("linear test equation y' = i y") {
        VectorXcd y(1);
        y << cplx{1.0, 0.0};
        const double dt = 1e-2;
        auto out = rk4_step(y, 0.0, dt, [](double, const VectorXcd& v) {
            return (cplx{0.0, 1.0} * v).eval();
        });
        CHECK(std::abs(out[0] - std::exp(cplx{0.0, dt})) < std::pow(dt, 5));
    }
    SECTION("harmonic oscillator energy drift") {
        VectorXcd y(2);
        y << 1.0, 0.0; // (q, p)
        auto rhs = [](double, const VectorXcd& v) {
            VectorXcd d(2);
            d << v[1], -v[0];
            return d;
        };
        const double e0 = 0.5 * (std::norm(y[0]) + std::norm(y[1]));
        double t = 0.0;
        const double dt = 1e-3;
        for (int i = 0; i < 10000; ++i) {
            y = rk4_step(y, t, dt, rhs);
            t += dt;
        }
        const double e1 = 0.5 * (std::norm(y[0]) + std::norm(y[1]));
        CHECK(std::abs(e1 - e0) / e0 < 1e-8);
    }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid1D(1.0, 2), NumericalError);
    CHECK_THROWS_AS(Grid1D(-1.0, 11), NumericalError);
    Grid1D g(3.0, 7);
    CHECK(g.spacing == Catch::Approx(1.0));
    CHECK(g.node(0) == Catch::Approx(-3.0));
    CHECK(g.node(6) == Catch::Approx(3.0));
    CHECK(g.node(3) == Catch::Approx(0.0).margin(1e-15));
}
