#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "kapitza/effective.hpp"
#include "kapitza/floquet.hpp"
#include "kapitza/propagator.hpp"

namespace kapitza {

/// Gaussian transverse profile a exp(-beta x^2).
struct GaussianProfile {
    double amplitude = 0.0;
    double beta = 0.02;

    double value(double x) const { return amplitude * std::exp(-beta * x * x); }
    double derivative(double x) const { return -2.0 * beta * x * value(x); }
};

enum class MirrorModel { phase, reflectivity };

/// Fabry-Perot cavity with either aspherical phase mirrors (Delta_2 = -Delta_1)
/// or flat variable-reflectivity mirrors plus uniform gain.
struct ResonatorSpec {
    double mirror_spacing = 0.0; // d
    double wavenumber = 0.0;     // k = 2 pi / lambda
    MirrorModel model = MirrorModel::phase;
    GaussianProfile delta1;        // phase model: mirror surface displacement
    GaussianProfile ln_sqrt_r1;    // reflectivity model: ln sqrt(R1(x))
    double gain_length = 0.0;      // g d
    Grid1D grid;

    void validate() const {
        if (!(mirror_spacing > 0.0 && wavenumber > 0.0))
            throw NumericalError("ResonatorSpec: d and k must be positive");
        if (model == MirrorModel::reflectivity && ln_sqrt_r1.amplitude > 0.0)
            throw ReflectanceOutOfRange("ResonatorSpec: R1 must not exceed 1");
    }

    /// Phase delay W(x) = k Delta_1(x) of the first mirror.
    double phase_w(double x) const { return wavenumber * delta1.value(x); }
};

/// exp(D) with D = i (d/2k) dxx, the one-way diffraction operator.
inline MatrixXcd diffraction_operator(const ResonatorSpec& spec) {
    spec.validate();
    // -1/2 dxx is the shared stencil, so D = -i (d/k) * (-1/2 dxx)
    const MatrixXcd lap = build_laplacian(spec.grid);
    const MatrixXcd d = cplx{0.0, -spec.mirror_spacing / spec.wavenumber} * lap;
    return d.exp();
}

/// Round trip exp(D) e^{iW1} exp(D) e^{iW2} for phase mirrors, W2 = -W1.
inline MatrixXcd round_trip_phase(const ResonatorSpec& spec) {
    spec.validate();
    if (spec.model != MirrorModel::phase)
        throw NumericalError("round_trip_phase: spec is not a phase-mirror cavity");
    const int n = spec.grid.point_count;
    const MatrixXcd expd = diffraction_operator(spec);
    VectorXcd m1(n), m2(n);
    for (int j = 0; j < n; ++j) {
        const double w = spec.phase_w(spec.grid.node(j));
        m1[j] = std::exp(cplx{0.0, w});
        m2[j] = std::exp(cplx{0.0, -w});
    }
    return expd * m1.asDiagonal() * expd * m2.asDiagonal();
}

/// Round trip exp(D) sqrt(R1) exp(D) sqrt(R2) e^{gd} for reflectivity
/// mirrors; R2 is derived from the constraint R1 R2 = exp(-2 g d).
inline MatrixXcd round_trip_reflectivity(const ResonatorSpec& spec) {
    spec.validate();
    if (spec.model != MirrorModel::reflectivity)
        throw NumericalError("round_trip_reflectivity: spec is not a reflectivity cavity");
    const int n = spec.grid.point_count;
    const MatrixXcd expd = diffraction_operator(spec);
    VectorXcd sr1(n), sr2(n);
    for (int j = 0; j < n; ++j) {
        const double ln_sr1 = spec.ln_sqrt_r1.value(spec.grid.node(j));
        sr1[j] = std::exp(ln_sr1);
        const double sr2j = std::exp(-spec.gain_length - ln_sr1);
        if (!(sr2j > 0.0 && sr2j <= 1.0))
            throw ReflectanceOutOfRange("round_trip_reflectivity: derived R2 outside (0,1]");
        sr2[j] = sr2j;
    }
    return std::exp(spec.gain_length) *
           (expd * sr1.asDiagonal() * expd * sr2.asDiagonal()).eval();
}

struct CavityMode {
    cplx eigenvalue; // exp(-i mu)
    cplx mu;         // principal branch
    cplx eps;        // mapped Schrodinger energy k mu / (2d)
    VectorXcd profile;
    double localization = 0.0;
    double kinetic = 0.0;
    bool confined = false;
};

struct CavityModeSet {
    std::vector<CavityMode> modes; // sorted by Re mu ascending

    int confined_count() const {
        int c = 0;
        for (const auto& m : modes) c += m.confined ? 1 : 0;
        return c;
    }

    const CavityMode* confined_mode() const {
        for (const auto& m : modes)
            if (m.confined) return &m;
        return nullptr;
    }
};

inline constexpr double kConfinedEigenvalueTol = 1e-6;

/// Eigenmodes of a round-trip operator. Confined modes sit on the unit
/// circle and are localized; the kinetic guard rejects band-edge alias
/// copies produced by the finite-difference stencil.
inline CavityModeSet cavity_modes(const MatrixXcd& round_trip, const ResonatorSpec& spec) {
    auto pairs = eig_dense(round_trip);
    const double band_mid = 1.0 / (spec.grid.spacing * spec.grid.spacing);
    CavityModeSet set;
    set.modes.reserve(pairs.size());
    for (auto& p : pairs) {
        if (std::abs(p.value) < 1e-12)
            throw EigenvalueAtZero("cavity_modes: |eigenvalue| ~ 0");
        CavityMode m;
        m.eigenvalue = p.value;
        double re = -std::arg(p.value);
        if (re <= -M_PI) re += 2.0 * M_PI;
        m.mu = cplx{re, std::log(std::abs(p.value))};
        m.eps = spec.wavenumber * m.mu / (2.0 * spec.mirror_spacing);
        m.profile = std::move(p.vector);
        m.localization = localization_fraction(m.profile, spec.grid);
        m.kinetic = detail::harmonic_kinetic(m.profile, spec.grid, 1);
        m.confined = m.localization > kBoundLocalizationThreshold &&
                     std::abs(p.value) >= 1.0 - kConfinedEigenvalueTol &&
                     m.kinetic <= band_mid;
        set.modes.push_back(std::move(m));
    }
    std::sort(set.modes.begin(), set.modes.end(),
              [](const CavityMode& a, const CavityMode& b) {
                  return a.mu.real() < b.mu.real();
              });
    return set;
}

/// Short-cavity effective potential: +(1/8)(dW/dx)^2 for phase mirrors,
/// -(1/8)(d ln sqrt(R1)/dx)^2 for reflectivity mirrors.
inline EffectivePotential short_cavity_effective_potential(const ResonatorSpec& spec) {
    spec.validate();
    EffectivePotential out;
    out.grid = spec.grid;
    out.values.resize(spec.grid.point_count);
    if (spec.model == MirrorModel::phase) {
        out.provenance = VeffProvenance::resonator_phase;
        for (int j = 0; j < spec.grid.point_count; ++j) {
            const double dw = spec.wavenumber * spec.delta1.derivative(spec.grid.node(j));
            out.values[j] = 0.125 * dw * dw;
        }
    } else {
        out.provenance = VeffProvenance::resonator_reflectivity;
        for (int j = 0; j < spec.grid.point_count; ++j) {
            const double dl = spec.ln_sqrt_r1.derivative(spec.grid.node(j));
            out.values[j] = -0.125 * dl * dl;
        }
    }
    return out;
}

} // namespace kapitza
