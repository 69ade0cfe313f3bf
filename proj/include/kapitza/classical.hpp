#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kapitza/linalg.hpp"

namespace kapitza {

enum class AmplitudeKind { real, imaginary };

/// Pendulum with a rapidly vibrating pivot. The drive amplitude A is
/// purely real or purely imaginary; the kind flag makes the choice explicit.
struct PendulumParams {
    double g = 1.0;
    double l = 1.0;
    cplx drive_amplitude{0.0, 0.0}; // A
    double omega = 1.0;
    AmplitudeKind kind = AmplitudeKind::real;

    void validate() const {
        if (!(g > 0.0 && l > 0.0 && omega > 0.0))
            throw NumericalError("PendulumParams: g, l, omega must be positive");
        const bool is_real = drive_amplitude.imag() == 0.0;
        const bool is_imag = drive_amplitude.real() == 0.0;
        if (kind == AmplitudeKind::real && !is_real)
            throw NumericalError("PendulumParams: kind=real requires Im A = 0");
        if (kind == AmplitudeKind::imaginary && !is_imag)
            throw NumericalError("PendulumParams: kind=imaginary requires Re A = 0");
    }
};

struct ClassicalState {
    cplx theta{0.0, 0.0};
    cplx theta_dot{0.0, 0.0};
    double t = 0.0;
};

/// Equation of motion: theta_ddot = (sin(theta)/l) (g - A w^2 cos(w t)).
inline std::pair<cplx, cplx> eom_rhs(const ClassicalState& s, const PendulumParams& p) {
    const cplx acc = std::sin(s.theta) / p.l *
                     (p.g - p.drive_amplitude * p.omega * p.omega * std::cos(p.omega * s.t));
    return {s.theta_dot, acc};
}

/// Cycle-averaged potential V_eff = g l (cos(theta) + A^2 w^2/(4 g l) sin^2(theta)),
/// per unit mass. Purely imaginary A flips the sign of the averaging term
/// through A^2 < 0; the result stays real either way.
inline double effective_potential_classical(double theta, const PendulumParams& p) {
    const cplx a2 = p.drive_amplitude * p.drive_amplitude;
    const cplx v = p.g * p.l *
                   (std::cos(theta) + a2 * p.omega * p.omega / (4.0 * p.g * p.l) *
                                          std::sin(theta) * std::sin(theta));
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
        throw NonRealEffectivePotential("effective_potential_classical: general complex A");
    return v.real();
}

/// Minima of the effective potential on (-pi, pi].
/// dV/dtheta = -g l sin(theta) (1 + (A^2 w^2 / 2 g l) cos(theta)) vanishes at
/// theta in {0, pi, +-arccos(-2gl/(A^2 w^2))}; which of those are minima
/// depends on the drive strength and sign of A^2.
inline std::vector<double> stable_points(const PendulumParams& p) {
    const double a2 = (p.drive_amplitude * p.drive_amplitude).real(); // A^2, signed
    const double q = a2 * p.omega * p.omega / (p.g * p.l);            // A^2 w^2 / (g l)
    if (std::abs(q) <= 2.0) return {M_PI}; // subthreshold: ordinary pendulum minimum
    if (q > 0.0) return {0.0, M_PI};       // real drive: stabilized inverted position
    // imaginary drive: two tilted minima at arccos(2/q), argument negative
    const double c = 2.0 / q;
    const double th = std::acos(c);
    return {-th, th};
}

struct Trajectory {
    std::vector<ClassicalState> states;
};

/// RK4 integration of the complex pendulum. Angles live on the covering
/// space (no wrapping).
inline Trajectory simulate_trajectory(const PendulumParams& p, const ClassicalState& init,
                                      double t_end, double dt) {
    p.validate();
    if (std::abs(p.drive_amplitude) > 0.0 && !(dt <= 2.0 * M_PI / (50.0 * p.omega)))
        throw NumericalError("simulate_trajectory: dt too coarse for the drive period");

    auto rhs = [&p](double t, const VectorXcd& y) {
        ClassicalState s{y[0], y[1], t};
        auto [v, a] = eom_rhs(s, p);
        VectorXcd dy(2);
        dy << v, a;
        return dy;
    };

    Trajectory traj;
    VectorXcd y(2);
    y << init.theta, init.theta_dot;
    double t = init.t;
    traj.states.push_back({y[0], y[1], t});
    const long nsteps = static_cast<long>(std::ceil((t_end - t) / dt));
    for (long i = 0; i < nsteps; ++i) {
        y = rk4_step(y, t, dt, rhs);
        t = init.t + (i + 1) * dt;
        if (std::abs(y[0]) > 1e3)
            throw DivergedTrajectory("simulate_trajectory: |theta| exceeded 1e3");
        traj.states.push_back({y[0], y[1], t});
    }
    return traj;
}

/// Sliding one-period average of Re(theta), centered on each sample.
/// Samples closer than half a period to either end are dropped.
inline std::vector<std::pair<double, double>>
cycle_averaged_re_theta(const Trajectory& traj, double period) {
    std::vector<std::pair<double, double>> out;
    const auto& st = traj.states;
    if (st.size() < 2) return out;
    const double dt = st[1].t - st[0].t;
    const long half = static_cast<long>(std::round(0.5 * period / dt));
    if (half < 1) return out;
    for (size_t i = half; i + half < st.size(); ++i) {
        // trapezoid weights: the window endpoints are one period apart and
        // would otherwise be double-counted
        double acc = 0.5 * (st[i - half].theta.real() + st[i + half].theta.real());
        for (long j = -half + 1; j < half; ++j) acc += st[i + j].theta.real();
        out.emplace_back(st[i].t, acc / (2 * half));
    }
    return out;
}

} // namespace kapitza
