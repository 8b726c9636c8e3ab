#include "speclab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "speclab/errors.hpp"
#include "speclab/format.hpp"

namespace speclab {

namespace {

constexpr int kDenseLimit = 1200;
constexpr double kResidualTarget = 1e-9;
constexpr int kIterationCap = 500;

void fix_sign(Eigen::VectorXd& v) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
}

double pencil_residual(const Eigen::VectorXd& Au, const Eigen::VectorXd& Mu, double sigma) {
    return (Au - sigma * Mu).norm() / (Au.norm() + std::abs(sigma) * Mu.norm());
}

EigenResult dense_path(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M, int m) {
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::MassNotPD, "Cholesky factorization of the mass matrix failed");

    // Congruent standard problem C = L^-1 A L^-T (A symmetric, so transposing
    // the intermediate is exact up to rounding; symmetrize to be safe).
    Eigen::MatrixXd C = llt.matrixL().solve(A);
    C = llt.matrixL().solve(C.transpose()).eval();
    C = (0.5 * (C + C.transpose())).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::ConvergenceFailure, "tridiagonal QL iteration did not converge");

    EigenResult result;
    result.used_path = SolverPath::Dense;
    for (int i = 0; i < m; ++i) {
        const double sigma = es.eigenvalues()(i);
        Eigen::VectorXd u = llt.matrixU().solve(es.eigenvectors().col(i));
        u /= std::sqrt(u.dot(M * u));
        fix_sign(u);
        const Eigen::VectorXd Au = A * u;
        const Eigen::VectorXd Mu = M * u;
        result.eigenvalues.push_back(sigma - 1.0);
        result.residual_norms.push_back(pencil_residual(Au, Mu, sigma));
        result.eigenvectors.push_back(std::move(u));
    }
    return result;
}

Eigen::MatrixXd deterministic_start(int n, int p) {
    // mt19937's output sequence is pinned by the standard; avoid
    // distributions (whose mapping is implementation-defined).
    std::mt19937 gen(0x5ec1abu);
    Eigen::MatrixXd X(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i)
            X(i, j) = static_cast<double>(gen()) / 4294967296.0 - 0.5;
    return X;
}

EigenResult iterative_path(const Eigen::SparseMatrix<double>& A,
                           const Eigen::SparseMatrix<double>& M, int m) {
    const int n = static_cast<int>(A.rows());
    const int p = std::min(n, std::max(2 * m, m + 8));

    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::MassNotPD,
                    "Cholesky factorization of the shifted pencil failed (mass not PD?)");

    Eigen::MatrixXd X = deterministic_start(n, p);
    Eigen::VectorXd sigma(p);
    double best_worst_residual = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < kIterationCap; ++iter) {
        const Eigen::MatrixXd Z = llt.solve(M * X);
        const Eigen::MatrixXd AZ = A * Z;
        const Eigen::MatrixXd MZ = M * Z;
        const Eigen::MatrixXd Sa = (0.5 * (Z.transpose() * AZ + AZ.transpose() * Z)).eval();
        const Eigen::MatrixXd Sm = (0.5 * (Z.transpose() * MZ + MZ.transpose() * Z)).eval();

        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Sa, Sm);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::ConvergenceFailure,
                        "Rayleigh-Ritz projection became singular during subspace iteration");
        // Ritz rotation keeps X's columns M-orthonormal: W' Sm W = I.
        X = Z * es.eigenvectors();
        sigma = es.eigenvalues();

        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            worst = std::max(worst,
                             pencil_residual(A * X.col(i), M * X.col(i), sigma(i)));
        best_worst_residual = std::min(best_worst_residual, worst);
        if (worst <= kResidualTarget) break;
        if (iter + 1 == kIterationCap)
            throw Error(ErrorCode::ConvergenceFailure,
                        "subspace iteration cap reached; best residual " +
                            fmt_g17(best_worst_residual));
    }

    EigenResult result;
    result.used_path = SolverPath::Iterative;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd u = X.col(i);
        fix_sign(u);
        result.eigenvalues.push_back(sigma(i) - 1.0);
        result.residual_norms.push_back(pencil_residual(A * u, M * u, sigma(i)));
        result.eigenvectors.push_back(std::move(u));
    }
    return result;
}

} // namespace

EigenResult smallest_eigs(const SymmetricSparseMatrix& K, const SymmetricSparseMatrix& M, int m,
                          SolverPath path) {
    const int n = K.order();
    if (M.order() != n) throw std::invalid_argument("K and M order mismatch");
    if (m < 1 || m > n) throw std::invalid_argument("eigenvalue count out of range");

    if (path == SolverPath::Auto)
        path = (n <= kDenseLimit || 2 * m >= n / 3) ? SolverPath::Dense : SolverPath::Iterative;

    if (path == SolverPath::Dense) {
        const Eigen::MatrixXd Md = M.to_dense();
        return dense_path(K.to_dense() + Md, Md, m);
    }
    const Eigen::SparseMatrix<double> Ms = M.to_sparse();
    Eigen::SparseMatrix<double> As = K.to_sparse() + Ms;
    As.makeCompressed();
    return iterative_path(As, Ms, m);
}

} // namespace speclab
