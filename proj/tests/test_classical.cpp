#include <catch2/catch_amalgamated.hpp>

#include "kapitza/classical.hpp"

using namespace kapitza;

namespace {

PendulumParams imaginary_drive(double amp, double omega) {
    PendulumParams p;
    p.drive_amplitude = cplx{0.0, amp};
    p.omega = omega;
    p.kind = AmplitudeKind::imaginary;
    return p;
}

PendulumParams real_drive(double amp, double omega) {
    PendulumParams p;
    p.drive_amplitude = cplx{amp, 0.0};
    p.omega = omega;
    p.kind = AmplitudeKind::real;
    return p;
}

// brute-force minima of the effective potential on (-pi, pi]
std::vector<double> brute_force_minima(const PendulumParams& p) {
    const int n = 62832; // ~1e-4 resolution
    std::vector<double> out;
    auto v = [&](long k) {
        const double th = -M_PI + (2.0 * M_PI * ((k % n + n) % n)) / n;
        return effective_potential_classical(th, p);
    };
    for (long k = 0; k < n; ++k)
        if (v(k) < v(k - 1) && v(k) < v(k + 1))
            out.push_back(-M_PI + 2.0 * M_PI * k / n);
    return out;
}

} // namespace

TEST_CASE("equation of motion samples") {
    SECTION("upright/inverted positions are equilibria") {
        auto p = real_drive(0.3, 5.0);
        for (double th : {0.0, M_PI}) {
            auto [v, a] = eom_rhs({cplx{th, 0.0}, cplx{0.0, 0.0}, 0.2}, p);
            CHECK(std::abs(a) < 1e-14);
            CHECK(std::abs(v) < 1e-14);
        }
    }
    SECTION("undriven pendulum at theta = pi/2") {
        PendulumParams p; // g = l = 1, A = 0
        auto [v, a] = eom_rhs({cplx{M_PI / 2.0, 0.0}, cplx{0.0, 0.0}, 0.0}, p);
        CHECK(a.real() == Catch::Approx(1.0));
        CHECK(a.imag() == 0.0);
    }
    SECTION("imaginary amplitude feeds the imaginary part") {
        auto p = imaginary_drive(0.1, 10.0);
        auto [v, a] = eom_rhs({cplx{1.0, 0.0}, cplx{0.0, 0.0}, 0.0}, p);
        // sin(1) (1 - 0.1i * 100 * cos 0) => Im = -10 sin(1)
        CHECK(a.real() == Catch::Approx(std::sin(1.0)));
        CHECK(a.imag() == Catch::Approx(-10.0 * std::sin(1.0)));
    }
}

TEST_CASE("classical effective potential") {
    SECTION("undriven limit is g l cos(theta)") {
        PendulumParams p;
        p.g = 2.0;
        p.l = 3.0;
        for (double th : {0.0, 0.7, 2.0, M_PI})
            CHECK(effective_potential_classical(th, p) ==
                  Catch::Approx(6.0 * std::cos(th)));
    }
    SECTION("strong real drive: both 0 and pi are minima, pi is global") {
        auto p = real_drive(std::sqrt(10.0) / 5.0, 5.0); // A^2 w^2/(g l) = 10
        const double d = 1e-3;
        auto v = [&](double th) { return effective_potential_classical(th, p); };
        CHECK(v(0.0) < v(d));
        CHECK(v(M_PI) < v(M_PI - d));
        CHECK(v(M_PI) < v(0.0));
    }
    SECTION("strong imaginary drive: tilted minima at +-arccos(-1/5)") {
        auto p = imaginary_drive(std::sqrt(10.0) / 5.0, 5.0); // A^2 w^2/(g l) = -10
        const double th = std::acos(-0.2);
        const double d = 1e-3;
        auto v = [&](double t) { return effective_potential_classical(t, p); };
        CHECK(v(th) < v(th + d));
        CHECK(v(th) < v(th - d));
        CHECK(v(0.0) > v(d)); // theta = 0 is a maximum now
    }
    SECTION("general complex amplitude is rejected") {
        PendulumParams p;
        p.drive_amplitude = cplx{0.3, 0.3};
        CHECK_THROWS_AS(effective_potential_classical(1.0, p),
                        NonRealEffectivePotential);
    }
}

TEST_CASE("stable points against brute-force minimization") {
    SECTION("subthreshold keeps only the hanging position") {
        auto p = real_drive(0.1, 2.0); // |q| = 0.04
        auto pts = stable_points(p);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0] == Catch::Approx(M_PI));
    }
    SECTION("real drive above threshold") {
        auto p = real_drive(std::sqrt(10.0) / 5.0, 5.0);
        auto pts = stable_points(p);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0] == Catch::Approx(0.0).margin(1e-12));
        CHECK(pts[1] == Catch::Approx(M_PI));
        auto brute = brute_force_minima(p);
        REQUIRE(brute.size() == pts.size());
        for (double pt : pts) {
            double best = 1e9;
            for (double b : brute) {
                const double raw = std::abs(pt - b);
                best = std::min(best, std::min(raw, 2.0 * M_PI - raw));
            }
            CHECK(best < 1e-3);
        }
    }
    SECTION("imaginary drive above threshold: +-1.7722") {
        auto p = imaginary_drive(std::sqrt(10.0) / 5.0, 5.0);
        auto pts = stable_points(p);
        REQUIRE(pts.size() == 2);
        CHECK(pts[1] == Catch::Approx(std::acos(-0.2)).margin(1e-12));
        CHECK(pts[1] == Catch::Approx(1.7722).margin(1e-3));
        CHECK(pts[0] == Catch::Approx(-pts[1]));
        auto brute = brute_force_minima(p);
        REQUIRE(brute.size() == 2);
        CHECK(std::abs(pts[0] - brute[0]) < 1e-3);
        CHECK(std::abs(pts[1] - brute[1]) < 1e-3);
    }
}

TEST_CASE("trajectory integration") {
    SECTION("hanging equilibrium is preserved exactly") {
        PendulumParams p;
        auto traj = simulate_trajectory(p, {cplx{M_PI, 0.0}, cplx{0.0, 0.0}, 0.0},
                                        10.0, 1e-2);
        for (const auto& s : traj.states) {
            CHECK(std::abs(s.theta - cplx{M_PI, 0.0}) < 1e-12);
            CHECK(std::abs(s.theta_dot) < 1e-12);
        }
    }
    SECTION("real drive from a real start stays real") {
        auto p = real_drive(0.1, std::sqrt(1000.0));
        auto traj = simulate_trajectory(p, {cplx{0.3, 0.0}, cplx{0.0, 0.0}, 0.0},
                                        5.0, 1e-3);
        for (const auto& s : traj.states) CHECK(s.theta.imag() == 0.0);
    }
    SECTION("stabilized tilted state of the imaginary drive") {
        // strong-drive regime: A^2 w^2 / (g l) = -10
        const double omega = std::sqrt(1000.0);
        auto p = imaginary_drive(0.1, omega);
        const double th_min = std::acos(-0.2);
        const double period = 2.0 * M_PI / omega;
        auto traj = simulate_trajectory(
            p, {cplx{th_min + 0.25, 0.0}, cplx{0.0, 0.0}, 0.0}, 50.0 * period, 2e-3);
        auto avg = cycle_averaged_re_theta(traj, period);
        REQUIRE(!avg.empty());
        // oscillates around the tilted minimum without escaping
        double lo = 1e9, hi = -1e9, mean = 0.0;
        for (const auto& [t, v] : avg) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v;
        }
        mean /= avg.size();
        CHECK(mean == Catch::Approx(th_min).margin(0.3));
        CHECK(lo > th_min - 0.5);
        CHECK(hi < th_min + 0.5);
        // the imaginary part stays a small ripple
        for (const auto& s : traj.states) CHECK(std::abs(s.theta.imag()) < 0.5);
    }
    SECTION("dt coarser than a fiftieth of the drive period is rejected") {
        auto p = real_drive(0.1, 100.0);
        CHECK_THROWS_AS(
            simulate_trajectory(p, {cplx{0.1, 0.0}, cplx{0.0, 0.0}, 0.0}, 1.0, 0.01),
            NumericalError);
    }
    SECTION("runaway solutions are reported") {
        PendulumParams p; // fast rotation: theta grows without bound on the cover
        CHECK_THROWS_AS(simulate_trajectory(p, {cplx{0.1, 0.0}, cplx{100.0, 0.0}, 0.0},
                                            20.0, 1e-2),
                        DivergedTrajectory);
    }
}

TEST_CASE("cycle averaging window") {
    Trajectory traj;
    const double dt = 0.1;
    for (int i = 0; i <= 100; ++i)
        traj.states.push_back({cplx{std::sin(2.0 * M_PI * i * dt), 0.0},
                               cplx{0.0, 0.0}, i * dt});
    auto avg = cycle_averaged_re_theta(traj, 1.0);
    REQUIRE(!avg.empty());
    // averaging a pure oscillation over its own period gives ~0
    for (const auto& [t, v] : avg) CHECK(std::abs(v) < 0.05);
    CHECK(avg.front().first >= 0.5);
    CHECK(avg.back().first <= 10.0 - 0.5 + 1e-9);
}

TEST_CASE("parameter validation") {
    PendulumParams p;
    p.g = -1.0;
    CHECK_THROWS_AS(p.validate(), NumericalError);
    p.g = 1.0;
    p.kind = AmplitudeKind::imaginary;
    p.drive_amplitude = cplx{0.2, 0.0};
    CHECK_THROWS_AS(p.validate(), NumericalError);
    p.drive_amplitude = cplx{0.0, 0.2};
    CHECK_NOTHROW(p.validate());
}
