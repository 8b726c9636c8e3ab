#include "speclab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "speclab/errors.hpp"
#include "speclab/format.hpp"

namespace speclab {

void SymmetricSparseMatrix::add(int row, int col, double value) {
    if (row > col) std::swap(row, col);
    entries_.push_back({row, col, value});
    compressed_ = false;
}

void SymmetricSparseMatrix::compress() {
    if (compressed_) return;
    std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
            merged.back().value += e.value;
        else
            merged.push_back(e);
    }
    entries_ = std::move(merged);
    compressed_ = true;
}

Eigen::MatrixXd SymmetricSparseMatrix::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : entries_) {
        m(e.row, e.col) += e.value;
        if (e.row != e.col) m(e.col, e.row) += e.value;
    }
    return m;
}

Eigen::SparseMatrix<double> SymmetricSparseMatrix::to_sparse() const {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * entries_.size());
    for (const auto& e : entries_) {
        trips.emplace_back(e.row, e.col, e.value);
        if (e.row != e.col) trips.emplace_back(e.col, e.row, e.value);
    }
    Eigen::SparseMatrix<double> m(n_, n_);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

double SymmetricSparseMatrix::sum() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.row == e.col ? e.value : 2.0 * e.value;
    return s;
}

namespace {

DofMap build_dof_map(const Mesh& mesh, ProblemKind kind) {
    const int n = static_cast<int>(mesh.nodes.size());
    std::vector<bool> constrained(n, false);
    if (kind == ProblemKind::Dirichlet) {
        for (const auto& e : mesh.boundary_edges) constrained[e.a] = constrained[e.b] = true;
    } else if (kind == ProblemKind::Mixed) {
        // A node on the closure of the Dirichlet part is constrained, so
        // D/N junction vertices count as Dirichlet.
        for (const auto& e : mesh.boundary_edges)
            if (mesh.edge_label(e) == BoundaryLabel::Dirichlet)
                constrained[e.a] = constrained[e.b] = true;
    }
    DofMap dofs;
    dofs.node_to_free.assign(n, DofMap::kConstrained);
    for (int i = 0; i < n; ++i)
        if (!constrained[i]) dofs.node_to_free[i] = dofs.free_count++;
    return dofs;
}

} // namespace

AssembledSystem assemble(const Mesh& mesh, ProblemKind kind) {
    DofMap dofs = build_dof_map(mesh, kind);
    SymmetricSparseMatrix K(dofs.free_count);
    SymmetricSparseMatrix M(dofs.free_count);

    const double area_floor = 1e-14 * mesh.total_area();

    for (const auto& t : mesh.triangles) {
        const Eigen::Vector2d& p0 = mesh.nodes[t[0]];
        const Eigen::Vector2d& p1 = mesh.nodes[t[1]];
        const Eigen::Vector2d& p2 = mesh.nodes[t[2]];
        const Eigen::Vector2d e1 = p1 - p0;
        const Eigen::Vector2d e2 = p2 - p0;
        const double twice_area = e1.x() * e2.y() - e1.y() * e2.x();
        const double area = 0.5 * twice_area;
        if (area <= area_floor)
            throw Error(ErrorCode::DegenerateTriangle, "triangle area " + fmt_g17(area) +
                                                           " below floor " +
                                                           fmt_g17(area_floor));

        // Gradients of the barycentric coordinates: grad(lambda_i) is the
        // rotated opposite edge over twice the area.
        Eigen::Matrix<double, 3, 2> grad;
        grad.row(0) = Eigen::Vector2d(p1.y() - p2.y(), p2.x() - p1.x()).transpose();
        grad.row(1) = Eigen::Vector2d(p2.y() - p0.y(), p0.x() - p2.x()).transpose();
        grad.row(2) = Eigen::Vector2d(p0.y() - p1.y(), p1.x() - p0.x()).transpose();
        grad /= twice_area;

        const Eigen::Matrix3d Ke = area * (grad * grad.transpose());
        Eigen::Matrix3d Me;
        Me << 2, 1, 1, 1, 2, 1, 1, 1, 2;
        Me *= area / 12.0;

        for (int i = 0; i < 3; ++i) {
            const int gi = dofs.node_to_free[t[i]];
            if (gi == DofMap::kConstrained) continue;
            for (int j = i; j < 3; ++j) {
                const int gj = dofs.node_to_free[t[j]];
                if (gj == DofMap::kConstrained) continue;
                K.add(gi, gj, Ke(i, j));
                M.add(gi, gj, Me(i, j));
            }
        }
    }
    K.compress();
    M.compress();
    return {std::move(K), std::move(M), std::move(dofs)};
}

void write_coo(std::ostream& os, const SymmetricSparseMatrix& m) {
    for (const auto& e : m.entries())
        os << e.row << " " << e.col << " " << fmt_g17(e.value) << "\n";
}

} // namespace speclab
