#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "kapitza/effective.hpp"
#include "kapitza/floquet.hpp"
#include "kapitza/linalg.hpp"

namespace kapitza {

/// exp(-i H T/2) by Pade scaling-and-squaring.
inline MatrixXcd half_period_propagator(const MatrixXcd& h, double period) {
    if (h.rows() != h.cols())
        throw NumericalError("half_period_propagator: matrix must be square");
    if (!(period > 0.0))
        throw NumericalError("half_period_propagator: period must be positive");
    const MatrixXcd a = cplx{0.0, -0.5 * period} * h;
    return a.exp();
}

/// One-period propagator of the square-wave drive.
struct Monodromy {
    MatrixXcd u;
    double period = 0.0;
    Grid1D grid;
};

/// U = exp(-i H2 T/2) exp(-i H1 T/2) with H1 = -1/2 dxx + W,
/// H2 = -1/2 dxx - W.
inline Monodromy monodromy_square_wave(const PotentialSpec& spec, const Grid1D& grid) {
    spec.validate();
    if (spec.drive != DriveShape::square_wave)
        throw NumericalError("monodromy_square_wave: drive must be square_wave");
    const MatrixXcd lap = build_laplacian(grid);
    const VectorXcd w = spec.w_values(grid);
    MatrixXcd h1 = lap, h2 = lap;
    h1.diagonal() += w;
    h2.diagonal() -= w;
    Monodromy m;
    m.period = spec.period;
    m.grid = grid;
    m.u = half_period_propagator(h2, spec.period) * half_period_propagator(h1, spec.period);
    return m;
}

struct MonodromyMode {
    cplx lambda;  // propagator eigenvalue exp(-i eps T)
    cplx eps;     // i ln(lambda)/T, Re eps in (-pi/T, pi/T]
    VectorXcd profile;
    double localization = 0.0;
    double kinetic = 0.0;
    bool is_bound = false;
};

/// Quasi-energies from the monodromy eigenvalues, principal branch.
inline std::vector<MonodromyMode> quasi_energies_from_monodromy(const Monodromy& m) {
    auto pairs = eig_dense(m.u);
    const double band_mid = 1.0 / (m.grid.spacing * m.grid.spacing);
    const double omega = 2.0 * M_PI / m.period;
    std::vector<MonodromyMode> out;
    out.reserve(pairs.size());
    for (auto& p : pairs) {
        if (std::abs(p.value) < 1e-12)
            throw EigenvalueAtZero("quasi_energies_from_monodromy: |lambda| ~ 0");
        MonodromyMode mode;
        mode.lambda = p.value;
        // eps = i ln(lambda)/T; arg in (-pi, pi] puts Re eps in [-w/2, w/2)
        double re = -std::arg(p.value) / m.period;
        if (re <= -0.5 * omega) re += omega;
        mode.eps = cplx{re, std::log(std::abs(p.value)) / m.period};
        mode.profile = std::move(p.vector);
        mode.localization = localization_fraction(mode.profile, m.grid);
        mode.kinetic = detail::harmonic_kinetic(mode.profile, m.grid, 1);
        mode.is_bound = std::abs(mode.eps.imag()) <= kBoundImEpsRelTol * omega &&
                        mode.localization > kBoundLocalizationThreshold &&
                        mode.kinetic <= band_mid;
        out.push_back(std::move(mode));
    }
    std::sort(out.begin(), out.end(), [](const MonodromyMode& a, const MonodromyMode& b) {
        return a.eps.real() < b.eps.real();
    });
    return out;
}

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<VectorXcd> snapshots;
    std::vector<cplx> survival; // <psi0 | psi(t)> with the grid measure
    std::vector<double> norms;
};

namespace detail {

/// Thomas solve for a tridiagonal system (diag d, off-diagonals sub/sup).
inline VectorXcd solve_tridiagonal(const VectorXcd& sub, VectorXcd d,
                                   const VectorXcd& sup, VectorXcd rhs) {
    const int n = static_cast<int>(d.size());
    for (int j = 1; j < n; ++j) {
        const cplx w = sub[j - 1] / d[j - 1];
        d[j] -= w * sup[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    VectorXcd x(n);
    x[n - 1] = rhs[n - 1] / d[n - 1];
    for (int j = n - 2; j >= 0; --j) x[j] = (rhs[j] - sup[j] * x[j + 1]) / d[j];
    return x;
}

inline double drive_factor(const PotentialSpec& spec, double t) {
    if (spec.drive == DriveShape::sinusoidal) return std::cos(spec.omega * t);
    const double phase = std::fmod(t, spec.period);
    return phase < 0.5 * spec.period ? 1.0 : -1.0;
}

} // namespace detail

/// Crank-Nicolson evolution of i dpsi/dt = (-1/2 dxx + W(x) f(t)) psi with
/// the midpoint-in-time potential; snapshots once per drive period.
inline EvolutionTrace evolve(const PotentialSpec& spec, const Grid1D& grid,
                             const VectorXcd& psi0, double t_end, double dt) {
    spec.validate();
    if (psi0.size() != grid.point_count)
        throw NumericalError("evolve: psi0 length mismatch");
    const double period =
        spec.drive == DriveShape::sinusoidal ? 2.0 * M_PI / spec.omega : spec.period;
    if (!(dt <= period / 200.0))
        throw NumericalError("evolve: dt must be at most T/200");

    const int n = grid.point_count;
    const double h2 = grid.spacing * grid.spacing;
    const VectorXcd w = spec.w_values(grid);
    const cplx idt2{0.0, 0.5 * dt};

    // H = -1/2 dxx + W f(t): constant off-diagonals, time-dependent diagonal
    const cplx off = -0.5 / h2;
    VectorXcd sub = VectorXcd::Constant(n - 1, idt2 * off);
    VectorXcd sup = sub;

    EvolutionTrace trace;
    VectorXcd psi = psi0;
    const long nsteps = static_cast<long>(std::ceil(t_end / dt));
    const long per_period = std::max<long>(1, static_cast<long>(std::round(period / dt)));

    auto record = [&](double t) {
        trace.times.push_back(t);
        trace.snapshots.push_back(psi);
        trace.survival.push_back(psi0.dot(psi) * grid.spacing);
        trace.norms.push_back(psi.norm() * std::sqrt(grid.spacing));
    };
    record(0.0);

    for (long i = 0; i < nsteps; ++i) {
        const double t_mid = (i + 0.5) * dt;
        const double f = detail::drive_factor(spec, t_mid);
        VectorXcd hdiag = VectorXcd::Constant(n, 1.0 / h2) + f * w;

        // (1 + i dt/2 H) psi_next = (1 - i dt/2 H) psi
        VectorXcd rhs(n);
        for (int j = 0; j < n; ++j) {
            cplx hp = hdiag[j] * psi[j];
            if (j > 0) hp += off * psi[j - 1];
            if (j + 1 < n) hp += off * psi[j + 1];
            rhs[j] = psi[j] - idt2 * hp;
        }
        VectorXcd diag = VectorXcd::Ones(n) + idt2 * hdiag;
        psi = detail::solve_tridiagonal(sub, diag, sup, rhs);

        const double nrm = psi.norm() * std::sqrt(grid.spacing);
        if (!(nrm < 1e6))
            throw DivergedNorm("evolve: norm exceeded 1e6");
        if ((i + 1) % per_period == 0 || i + 1 == nsteps) record((i + 1) * dt);
    }
    return trace;
}

} // namespace kapitza
