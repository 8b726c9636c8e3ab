#pragma once

#include <vector>

#include <Eigen/Core>

#include "speclab/assembly.hpp"

namespace speclab {

enum class SolverPath { Auto, Dense, Iterative };

struct EigenResult {
    std::vector<double> eigenvalues; // ascending, with multiplicity
    std::vector<Eigen::VectorXd> eigenvectors; // M-normalized, deterministic sign
    std::vector<double> residual_norms; // ||Ku - lambda Mu|| / (||Ku|| + |lambda| ||Mu||),
                                        // evaluated on the (K+M, M) shifted pencil
    SolverPath used_path = SolverPath::Dense;
};

/// The m smallest eigenvalues of K u = lambda M u, K symmetric PSD, M
/// symmetric PD. Internally solves the shifted pencil (K+M) u = (lambda+1) M u
/// so a singular K (pure Neumann) needs no special casing, then shifts back.
///
/// Dense path: LL^T of M, congruent standard problem L^-1 (K+M) L^-T, reduced
/// to tridiagonal and solved by implicit shifted QL/QR. Iterative path:
/// shift-invert subspace iteration with Rayleigh-Ritz, deterministic start
/// block, used automatically above the dense size limit. Both paths meet the
/// residual invariant (each residual norm <= 1e-8).
///
/// Throws MassNotPD on Cholesky breakdown, ConvergenceFailure if the residual
/// target is unmet after the iteration cap (message reports best residual).
EigenResult smallest_eigs(const SymmetricSparseMatrix& K, const SymmetricSparseMatrix& M, int m,
                          SolverPath path = SolverPath::Auto);

} // namespace speclab
