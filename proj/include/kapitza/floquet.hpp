#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kapitza/effective.hpp"
#include "kapitza/linalg.hpp"

namespace kapitza {

/// Truncated harmonic expansion of the driven Schrodinger problem:
/// harmonics n = -N..N, matrix dimension (2N+1) Nx.
struct FloquetProblem {
    PotentialSpec spec;
    Grid1D grid;
    int harmonic_cutoff = 2; // N

    int block_count() const { return 2 * harmonic_cutoff + 1; }
    int dimension() const { return block_count() * grid.point_count; }

    void validate(int max_dim = kDefaultMaxEigDim) const {
        spec.validate();
        if (spec.drive != DriveShape::sinusoidal)
            throw NumericalError("FloquetProblem: drive must be sinusoidal");
        if (harmonic_cutoff < 1)
            throw NumericalError("FloquetProblem: harmonic cutoff must be >= 1");
        if (dimension() > max_dim)
            throw DimensionTooLarge("FloquetProblem: dimension " +
                                    std::to_string(dimension()) + " exceeds max");
    }
};

/// Block matrix of the coupled harmonic equations: diagonal blocks
/// -1/2 d^2/dx^2 + n w, off-diagonal blocks (W/2) I between neighboring
/// harmonics.
inline MatrixXcd build_floquet_matrix(const FloquetProblem& p) {
    p.validate();
    const int nx = p.grid.point_count;
    const int nb = p.block_count();
    const MatrixXcd lap = build_laplacian(p.grid);
    const VectorXcd w = p.spec.w_values(p.grid);

    MatrixXcd m = MatrixXcd::Zero(p.dimension(), p.dimension());
    for (int b = 0; b < nb; ++b) {
        const int harm = b - p.harmonic_cutoff;
        m.block(b * nx, b * nx, nx, nx) = lap;
        m.block(b * nx, b * nx, nx, nx).diagonal().array() +=
            static_cast<double>(harm) * p.spec.omega;
        if (b + 1 < nb) {
            m.block(b * nx, (b + 1) * nx, nx, nx).diagonal() = 0.5 * w;
            m.block((b + 1) * nx, b * nx, nx, nx).diagonal() = 0.5 * w;
        }
    }
    return m;
}

/// Reduce Re(eps) into (-w/2, w/2] by integer multiples of w.
inline cplx fold(cplx eps, double omega) {
    if (!(omega > 0.0)) throw NumericalError("fold: omega must be positive");
    const double r = eps.real();
    const double k = std::floor((r + 0.5 * omega) / omega);
    double rf = r - k * omega;
    if (rf <= -0.5 * omega) rf += omega; // boundary belongs to +w/2
    return {rf, eps.imag()};
}

struct QuasiEnergyEntry {
    cplx eps;
    cplx eps_folded;
    VectorXcd components;    // concatenated harmonics, unit norm, n = -N..N
    double localization = 0.0; // zeroth-harmonic fraction within |x| <= L/2
    double zeroth_weight = 0.0;
    double kinetic = 0.0;      // <v| -1/2 dxx |v>, band-edge alias guard
    bool is_bound = false;
};

struct QuasiEnergySpectrum {
    FloquetProblem problem;
    std::vector<QuasiEnergyEntry> entries; // sorted by Re eps ascending

    const QuasiEnergyEntry* bound_entry() const {
        for (const auto& e : entries)
            if (e.is_bound) return &e;
        return nullptr;
    }

    int bound_count() const {
        int c = 0;
        for (const auto& e : entries) c += e.is_bound ? 1 : 0;
        return c;
    }

    double max_abs_im_eps() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, std::abs(e.eps.imag()));
        return m;
    }

    Eigen::Map<const VectorXcd> harmonic(const QuasiEnergyEntry& e, int n) const {
        const int nx = problem.grid.point_count;
        const int b = n + problem.harmonic_cutoff;
        return Eigen::Map<const VectorXcd>(e.components.data() + b * nx, nx);
    }
};

namespace detail {

/// Mean kinetic energy of a concatenated-harmonics eigenvector; the
/// central stencil's band edge at 2/h^2 hosts checkerboard alias copies of
/// smooth states, which this discriminates against.
inline double harmonic_kinetic(const VectorXcd& v, const Grid1D& grid, int blocks) {
    const int nx = grid.point_count;
    const double h2 = grid.spacing * grid.spacing;
    cplx acc = 0.0;
    for (int b = 0; b < blocks; ++b) {
        const auto seg = v.segment(b * nx, nx);
        for (int j = 0; j < nx; ++j) {
            cplx lap = seg[j] / h2;
            if (j > 0) lap -= 0.5 * seg[j - 1] / h2;
            if (j + 1 < nx) lap -= 0.5 * seg[j + 1] / h2;
            acc += std::conj(seg[j]) * lap;
        }
    }
    return acc.real() / v.squaredNorm();
}

} // namespace detail

inline constexpr double kBoundImEpsRelTol = 1e-6;
inline constexpr double kZerothWeightFloor = 0.5;

/// Full diagonalization of the Floquet matrix with per-entry localization
/// diagnostics and bound-state flags.
inline QuasiEnergySpectrum solve_spectrum(const FloquetProblem& p,
                                          int max_dim = kDefaultMaxEigDim) {
    p.validate(max_dim);
    auto pairs = eig_dense(build_floquet_matrix(p), max_dim);

    const int nx = p.grid.point_count;
    const double band_mid = 1.0 / (p.grid.spacing * p.grid.spacing);

    QuasiEnergySpectrum spec;
    spec.problem = p;
    spec.entries.reserve(pairs.size());
    for (auto& pr : pairs) {
        QuasiEnergyEntry e;
        e.eps = pr.value;
        e.eps_folded = fold(pr.value, p.spec.omega);
        e.components = std::move(pr.vector);
        const auto u0 = e.components.segment(p.harmonic_cutoff * nx, nx);
        e.zeroth_weight = u0.squaredNorm(); // components have unit norm
        double inner = 0.0;
        for (int j = 0; j < nx; ++j)
            if (std::abs(p.grid.node(j)) <= 0.5 * p.grid.half_width)
                inner += std::norm(u0[j]);
        e.localization = e.zeroth_weight > 0.0 ? inner / e.zeroth_weight : 0.0;
        e.kinetic = detail::harmonic_kinetic(e.components, p.grid, p.block_count());
        e.is_bound = std::abs(e.eps.imag()) <= kBoundImEpsRelTol * p.spec.omega &&
                     e.localization > kBoundLocalizationThreshold &&
                     e.zeroth_weight >= kZerothWeightFloor &&
                     e.kinetic <= band_mid;
        spec.entries.push_back(std::move(e));
    }
    return spec;
}

struct TransitionScan {
    std::vector<double> omegas;
    std::vector<double> max_abs_im;
    std::vector<int> bound_counts;
    double omega_threshold = 0.0;
};

inline constexpr double kTransitionImTol = 1e-3;

/// Sweep omega and locate the complex-to-real transition: the smallest
/// scanned omega whose max |Im eps| stays below tolerance for all larger
/// scanned omegas as well.
inline TransitionScan scan_transition(const PotentialSpec& spec, const Grid1D& grid,
                                      int harmonic_cutoff, double omega_lo,
                                      double omega_hi, double step,
                                      int max_dim = kDefaultMaxEigDim) {
    if (!(omega_lo > 0.0 && step > 0.0))
        throw NumericalError("scan_transition: omega_lo and step must be positive");
    TransitionScan scan;
    const int count = static_cast<int>(std::floor((omega_hi - omega_lo) / step + 0.5)) + 1;
    for (int i = 0; i < count; ++i) {
        const double om = omega_lo + i * step;
        FloquetProblem p{spec, grid, harmonic_cutoff};
        p.spec.omega = om;
        auto s = solve_spectrum(p, max_dim);
        scan.omegas.push_back(om);
        scan.max_abs_im.push_back(s.max_abs_im_eps());
        scan.bound_counts.push_back(s.bound_count());
    }
    int th = -1;
    for (int i = static_cast<int>(scan.omegas.size()) - 1; i >= 0; --i) {
        if (scan.max_abs_im[i] <= kTransitionImTol)
            th = i;
        else
            break;
    }
    if (th < 0)
        throw NoTransitionFound("scan_transition: no transition found in range");
    scan.omega_threshold = scan.omegas[th];
    return scan;
}

} // namespace kapitza
