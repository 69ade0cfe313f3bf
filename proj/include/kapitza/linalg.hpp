#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "kapitza/errors.hpp"
#include "kapitza/grid.hpp"

#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

namespace kapitza {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr int kDefaultMaxEigDim = 4096;

struct EigenPair {
    cplx value;
    VectorXcd vector;     // unit Euclidean norm
    double residual_norm; // ||A v - lambda v||_2
};

/// Second-order central-difference matrix of -1/2 d^2/dx^2 with Dirichlet
/// boundaries. Acts on all Nx nodes; values outside the grid are zero.
inline MatrixXcd build_laplacian(const Grid1D& grid) {
    const int n = grid.point_count;
    const double h2 = grid.spacing * grid.spacing;
    MatrixXcd m = MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        m(j, j) = 1.0 / h2;
        if (j + 1 < n) {
            m(j, j + 1) = -0.5 / h2;
            m(j + 1, j) = -0.5 / h2;
        }
    }
    return m;
}

inline bool is_hermitian(const MatrixXcd& m, double rel_tol = 1e-12) {
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

/// Full dense eigendecomposition. Hermitian inputs are routed to zheev,
/// everything else to zgeev. Pairs come back sorted by (Re, Im) ascending,
/// eigenvectors unit-normalized, with an explicit residual per pair.
inline std::vector<EigenPair> eig_dense(const MatrixXcd& m,
                                        int max_dim = kDefaultMaxEigDim) {
    const int n = static_cast<int>(m.rows());
    if (n < 1 || m.cols() != n)
        throw NumericalError("eig_dense: matrix must be square, n >= 1");
    if (n > max_dim)
        throw DimensionTooLarge("eig_dense: dimension " + std::to_string(n) +
                                " exceeds max " + std::to_string(max_dim));

    MatrixXcd vecs(n, n);
    VectorXcd vals(n);

    if (is_hermitian(m)) {
        MatrixXcd a = m;
        VectorXd w(n);
        int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', n,
                                 a.data(), n, w.data());
        if (info != 0)
            throw NonConvergence("zheev failed, info=" + std::to_string(info));
        vecs = a;
        vals = w.cast<cplx>();
    } else {
        MatrixXcd a = m;
        int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n,
                                 a.data(), n, vals.data(),
                                 nullptr, n, vecs.data(), n);
        if (info != 0)
            throw NonConvergence("zgeev failed, info=" + std::to_string(info));
    }

    // residuals in one pass: R = A V - V diag(vals)
    MatrixXcd r = m * vecs - vecs * vals.asDiagonal();

    std::vector<EigenPair> pairs(n);
    for (int j = 0; j < n; ++j) {
        const double nv = vecs.col(j).norm();
        pairs[j].value = vals[j];
        pairs[j].vector = vecs.col(j) / nv;
        pairs[j].residual_norm = r.col(j).norm() / nv;
    }
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return pairs;
}

/// Trapezoidal quadrature over [-L, L].
template <typename Derived>
auto integrate_trapezoid(const Eigen::MatrixBase<Derived>& values,
                         const Grid1D& grid) -> typename Derived::Scalar {
    if (values.size() != grid.point_count)
        throw NumericalError("integrate_trapezoid: length mismatch");
    typename Derived::Scalar acc = values[0] * 0.5;
    for (int j = 1; j + 1 < grid.point_count; ++j) acc += values[j];
    acc += values[grid.point_count - 1] * 0.5;
    return acc * grid.spacing;
}

/// One classical RK4 step for a complex-valued state.
inline VectorXcd rk4_step(const VectorXcd& state, double t, double dt,
                          const std::function<VectorXcd(double, const VectorXcd&)>& rhs) {
    if (!(dt > 0.0)) throw NumericalError("rk4_step: dt must be positive");
    const VectorXcd k1 = rhs(t, state);
    const VectorXcd k2 = rhs(t + 0.5 * dt, state + 0.5 * dt * k1);
    const VectorXcd k3 = rhs(t + 0.5 * dt, state + 0.5 * dt * k2);
    const VectorXcd k4 = rhs(t + dt, state + dt * k3);
    VectorXcd next = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite())
        throw DivergedTrajectory("rk4_step: non-finite state");
    return next;
}

} // namespace kapitza
