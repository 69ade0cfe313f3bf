#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "kapitza/classical.hpp"
#include "kapitza/linalg.hpp"

namespace kapitza {

enum class DriveShape { sinusoidal, square_wave };

/// Gaussian spatial profile W(x) = V0 exp(-beta x^2), real or imaginary,
/// under a sinusoidal or square-wave drive.
struct PotentialSpec {
    double v0 = 9.0;
    double beta = 0.02;
    AmplitudeKind kind = AmplitudeKind::imaginary;
    DriveShape drive = DriveShape::sinusoidal;
    double omega = 10.0;  // sinusoidal drive
    double period = 0.0;  // square-wave drive

    void validate() const {
        if (!(v0 > 0.0 && beta > 0.0))
            throw NumericalError("PotentialSpec: v0 and beta must be positive");
        if (drive == DriveShape::sinusoidal && !(omega > 0.0))
            throw NumericalError("PotentialSpec: omega must be positive");
        if (drive == DriveShape::square_wave && !(period > 0.0))
            throw NumericalError("PotentialSpec: period must be positive");
    }

    cplx amplitude_unit() const {
        return kind == AmplitudeKind::imaginary ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
    }

    cplx w(double x) const {
        return amplitude_unit() * v0 * std::exp(-beta * x * x);
    }

    /// Closed-form dW/dx = -2 beta x W(x).
    cplx dw_dx(double x) const { return -2.0 * beta * x * w(x); }

    VectorXcd w_values(const Grid1D& grid) const {
        VectorXcd v(grid.point_count);
        for (int j = 0; j < grid.point_count; ++j) v[j] = w(grid.node(j));
        return v;
    }
};

enum class VeffProvenance {
    sinusoidal_avg,
    square_wave_avg,
    resonator_phase,
    resonator_reflectivity,
    delta_approx
};

struct EffectivePotential {
    Grid1D grid;
    VectorXd values;
    VeffProvenance provenance = VeffProvenance::sinusoidal_avg;
};

namespace detail {

// (dW/dx)^2 is real: positive for real W, negative for imaginary W.
inline double dw_dx_squared(const PotentialSpec& spec, double x) {
    const cplx d = spec.dw_dx(x);
    return (d * d).real();
}

} // namespace detail

/// V_eff = (1/(4 w^2)) (dW/dx)^2 for the sinusoidal drive. For the
/// imaginary Gaussian this is -(V0^2 beta^2 / w^2) x^2 exp(-2 beta x^2).
inline EffectivePotential veff_sinusoidal(const PotentialSpec& spec, const Grid1D& grid) {
    spec.validate();
    if (spec.drive != DriveShape::sinusoidal)
        throw NumericalError("veff_sinusoidal: spec drive must be sinusoidal");
    EffectivePotential out{grid, VectorXd(grid.point_count), VeffProvenance::sinusoidal_avg};
    const double pref = 1.0 / (4.0 * spec.omega * spec.omega);
    for (int j = 0; j < grid.point_count; ++j)
        out.values[j] = pref * detail::dw_dx_squared(spec, grid.node(j));
    return out;
}

/// V_eff = (T^2/96) (dW/dx)^2 for the square-wave drive; differs from the
/// sinusoidal result by pi^2/6 when T = 2 pi / w.
inline EffectivePotential veff_square_wave(const PotentialSpec& spec, const Grid1D& grid) {
    spec.validate();
    if (spec.drive != DriveShape::square_wave)
        throw NumericalError("veff_square_wave: spec drive must be square_wave");
    EffectivePotential out{grid, VectorXd(grid.point_count), VeffProvenance::square_wave_avg};
    const double pref = spec.period * spec.period / 96.0;
    for (int j = 0; j < grid.point_count; ++j)
        out.values[j] = pref * detail::dw_dx_squared(spec, grid.node(j));
    return out;
}

struct BoundState {
    double energy = 0.0;
    VectorXcd psi; // L2-normalized with the grid measure
};

/// Fraction of |psi|^2 carried by nodes with |x| <= L/2.
inline double localization_fraction(const VectorXcd& psi, const Grid1D& grid) {
    double inner = 0.0, total = 0.0;
    for (int j = 0; j < grid.point_count; ++j) {
        const double p = std::norm(psi[j]);
        total += p;
        if (std::abs(grid.node(j)) <= 0.5 * grid.half_width) inner += p;
    }
    return total > 0.0 ? inner / total : 0.0;
}

inline constexpr double kBoundLocalizationThreshold = 0.99;

/// Fix the global phase so the maximum-magnitude component is real positive.
inline void fix_phase(VectorXcd& psi) {
    int jmax = 0;
    for (int j = 1; j < psi.size(); ++j)
        if (std::abs(psi[j]) > std::abs(psi[jmax])) jmax = j;
    const double a = std::abs(psi[jmax]);
    if (a > 0.0) psi *= std::conj(psi[jmax]) / a;
}

/// Negative-energy, localized eigenstates of -1/2 d^2/dx^2 + V_eff,
/// sorted by energy.
inline std::vector<BoundState> bound_states_static(const EffectivePotential& veff) {
    MatrixXcd h = build_laplacian(veff.grid);
    for (int j = 0; j < veff.grid.point_count; ++j) h(j, j) += veff.values[j];
    auto pairs = eig_dense(h);
    std::vector<BoundState> out;
    for (const auto& p : pairs) {
        if (p.value.real() >= 0.0) continue;
        if (localization_fraction(p.vector, veff.grid) <= kBoundLocalizationThreshold) continue;
        BoundState b;
        b.energy = p.value.real();
        b.psi = p.vector / std::sqrt(veff.grid.spacing);
        fix_phase(b.psi);
        out.push_back(std::move(b));
    }
    return out;
}

/// Shallow-well reduction: V_eff ~ alpha delta(x) with alpha the quadrature
/// integral of V_eff; single bound state E = -mu^2/2, mu = -alpha.
struct DeltaWell {
    double alpha = 0.0;
    double mu = 0.0;
    double energy = 0.0;

    double psi(double x) const { return std::sqrt(mu) * std::exp(-mu * std::abs(x)); }
};

inline DeltaWell delta_approximation(const EffectivePotential& veff) {
    const double alpha = integrate_trapezoid(veff.values, veff.grid);
    if (alpha >= 0.0)
        throw NoBoundState("delta_approximation: alpha >= 0, no bound state");
    DeltaWell w;
    w.alpha = alpha;
    w.mu = -alpha;
    w.energy = -0.5 * w.mu * w.mu;
    return w;
}

enum class GaugeDirection { forward, inverse };

/// Pointwise factor exp{-i (T/4) W(x)} mapping u -> y (forward) or back.
inline VectorXcd gauge_transform(const VectorXcd& u, const PotentialSpec& spec,
                                 const Grid1D& grid, GaugeDirection dir) {
    if (spec.drive != DriveShape::square_wave)
        throw NumericalError("gauge_transform: spec drive must be square_wave");
    if (u.size() != grid.point_count)
        throw NumericalError("gauge_transform: length mismatch");
    const double sign = dir == GaugeDirection::forward ? -1.0 : 1.0;
    VectorXcd out(u.size());
    for (int j = 0; j < grid.point_count; ++j) {
        const cplx phase = std::exp(sign * cplx{0.0, 1.0} * (spec.period / 4.0) *
                                    spec.w(grid.node(j)));
        out[j] = u[j] * phase;
    }
    return out;
}

} // namespace kapitza
