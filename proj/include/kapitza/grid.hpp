#pragma once

#include <Eigen/Core>

#include "kapitza/errors.hpp"

namespace kapitza {

/// Uniform spatial grid on [-L, L] with Dirichlet boundaries.
/// All Nx nodes are stored; the wavefunction is implicitly zero
/// just outside the grid.
struct Grid1D {
    double half_width = 0.0; // L
    int point_count = 0;     // Nx
    double spacing = 0.0;    // h = 2L/(Nx-1)

    Grid1D() = default;

    Grid1D(double L, int Nx)
        : half_width(L), point_count(Nx), spacing(2.0 * L / (Nx - 1)) {
        if (Nx < 3)
            throw NumericalError("Grid1D: point_count must be >= 3");
        if (!(L > 0.0))
            throw NumericalError("Grid1D: half_width must be positive");
    }

    double node(int j) const { return -half_width + j * spacing; }

    Eigen::VectorXd nodes() const {
        Eigen::VectorXd x(point_count);
        for (int j = 0; j < point_count; ++j) x[j] = node(j);
        return x;
    }
};

} // namespace kapitza
