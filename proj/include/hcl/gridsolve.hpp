#pragma once

#include "hcl/domain.hpp"
#include "hcl/measure.hpp"

namespace hcl {

struct GridSolveStats {
    int iterations = 0;
    double residual = 0.0;   // relative l2 residual of the linear system
};

/// Solve the discrete Poisson problem (h^2 / 2 pi) Lap5 u = w with zero
/// boundary data on the masked grid; w are nodal masses. Conjugate gradients
/// on the five-point M-matrix; residual target is relative 1e-13.
PshFunction grid_poisson_solve(const Domain& dom, const std::vector<double>& node_mass,
                               GridSolveStats* stats = nullptr);

/// Relatively extremal function of a node mask K: u = -1 on K, discretely
/// harmonic elsewhere, zero boundary values. This is the exact solution of
/// the obstacle formulation, whose active set is all of K.
PshFunction grid_extremal_solve(const Domain& dom, const CompactSubset& K,
                                GridSolveStats* stats = nullptr);

}  // namespace hcl
