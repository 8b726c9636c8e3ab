#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "speclab/mesh.hpp"

namespace speclab {

/// Which eigenvalue problem the matrices realize.
enum class ProblemKind { Dirichlet, Neumann, Mixed };

inline const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::Dirichlet: return "dirichlet";
        case ProblemKind::Neumann: return "neumann";
        case ProblemKind::Mixed: return "mixed";
    }
    return "?";
}

/// Symmetric matrix stored as the upper triangle in coordinate form
/// (row <= col). Assembly order is deterministic, so serialized dumps are
/// byte-stable.
class SymmetricSparseMatrix {
public:
    explicit SymmetricSparseMatrix(int n) : n_(n) {}

    int order() const { return n_; }

    void add(int row, int col, double value);

    /// Merges duplicate coordinates (sorted by row, then col). Idempotent.
    void compress();

    Eigen::MatrixXd to_dense() const;
    Eigen::SparseMatrix<double> to_sparse() const; // full symmetric storage

    double sum() const;

    struct Entry {
        int row;
        int col;
        double value;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    int n_ = 0;
    std::vector<Entry> entries_;
    bool compressed_ = false;
};

/// Node -> free-dof index map. kConstrained marks nodes on the closure of the
/// Dirichlet part (junction nodes shared with Neumann edges included).
struct DofMap {
    static constexpr int kConstrained = -1;

    std::vector<int> node_to_free;
    int free_count = 0;

    bool is_constrained(int node) const { return node_to_free[node] == kConstrained; }
};

struct AssembledSystem {
    SymmetricSparseMatrix K;
    SymmetricSparseMatrix M;
    DofMap dofs;
};

/// P1 stiffness and mass on the free dofs. Dirichlet rows/columns are
/// eliminated. Element integration is exact (no quadrature): P1 gradient
/// products are constant, shape products quadratic.
/// Throws DegenerateTriangle if a triangle area falls below 1e-14 * total.
AssembledSystem assemble(const Mesh& mesh, ProblemKind kind);

/// Coordinate text dump, one `row col value` line per stored upper-triangle
/// entry, 17 significant digits.
void write_coo(std::ostream& os, const SymmetricSparseMatrix& m);

} // namespace speclab
