#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "speclab/errors.hpp"

namespace speclab {

enum class BoundaryLabel { Dirichlet, Neumann };

inline char label_char(BoundaryLabel l) { return l == BoundaryLabel::Dirichlet ? 'D' : 'N'; }

/// Simple closed polygon with counterclockwise vertices and one boundary
/// label per edge. Segment i runs from vertex i to vertex (i+1) mod n.
/// Instances are validated on construction and immutable afterwards.
class PolygonDomain {
public:
    const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
    const std::vector<BoundaryLabel>& labels() const { return labels_; }
    int num_segments() const { return static_cast<int>(vertices_.size()); }

    Eigen::Vector2d segment_start(int i) const { return vertices_[i]; }
    Eigen::Vector2d segment_end(int i) const { return vertices_[(i + 1) % vertices_.size()]; }
    /// Outward unit normal of segment i (cached at construction).
    const Eigen::Vector2d& segment_normal(int i) const { return normals_[i]; }
    double segment_length(int i) const { return (segment_end(i) - segment_start(i)).norm(); }

    double area() const { return area_; }
    double boundary_length() const;
    double part_length(BoundaryLabel part) const;

    bool has_label(BoundaryLabel l) const;

    /// Identifies the geometric region Omega independently of the boundary
    /// labeling and of collinear vertices inserted by refine_partition.
    const std::string& geometry_id() const { return geometry_id_; }

    friend PolygonDomain build_polygon(const std::vector<Eigen::Vector2d>& points,
                                       const std::vector<BoundaryLabel>& labels);
    friend PolygonDomain refine_partition(const PolygonDomain& domain, BoundaryLabel part,
                                          double shrink);

private:
    PolygonDomain() = default;

    std::vector<Eigen::Vector2d> vertices_;
    std::vector<BoundaryLabel> labels_;
    std::vector<Eigen::Vector2d> normals_;
    double area_ = 0.0;
    std::string geometry_id_;
};

/// Axis-aligned box [0,L1] x ... x [0,Ld], d in {2,3}, with one label per
/// face. faces[axis] = {label at coordinate 0, label at coordinate L}.
class BoxDomain {
public:
    static BoxDomain make(int dim, const std::vector<double>& lengths,
                          const std::array<std::array<BoundaryLabel, 2>, 3>& faces);

    int dim() const { return dim_; }
    double length(int axis) const { return lengths_[axis]; }
    const std::array<BoundaryLabel, 2>& face_labels(int axis) const { return faces_[axis]; }

    bool has_label(BoundaryLabel l) const;
    /// True when every side length is exactly the double nearest pi; spectra
    /// are then computed in exact quarter-integer arithmetic.
    bool is_pi_box() const;

    /// Same box with every face relabeled (used for pure-D / pure-N spectra
    /// on the same geometry).
    BoxDomain with_all_faces(BoundaryLabel l) const;

    const std::string& geometry_id() const { return geometry_id_; }

private:
    BoxDomain() = default;

    int dim_ = 2;
    std::array<double, 3> lengths_{};
    std::array<std::array<BoundaryLabel, 2>, 3> faces_{};
    std::string geometry_id_;
};

/// Joint tangent space S(part): the set of vectors tangential to every
/// face/segment of the part. dim = d - rank{distinct outward normals}.
struct TangentSpaceInfo {
    BoundaryLabel part;
    std::vector<Eigen::Vector3d> normals; // distinct unit normals, z = 0 in 2D
    int dim = 0;
};

/// Validates and builds a polygon domain.
/// Throws: LabelCountMismatch, ClockwiseOrDegenerate, SelfIntersecting.
PolygonDomain build_polygon(const std::vector<Eigen::Vector2d>& points,
                            const std::vector<BoundaryLabel>& labels);

TangentSpaceInfo tangent_space_dim(const PolygonDomain& domain, BoundaryLabel part);
TangentSpaceInfo tangent_space_dim(const BoxDomain& box, BoundaryLabel part);

/// True iff every cross product of consecutive edge vectors is >= -1e-12
/// (collinear vertices allowed).
bool is_convex(const PolygonDomain& domain);

/// Splits the first segment carrying `part` at parameter `shrink` and gives
/// the tail the complementary label. Shrinking the Dirichlet part produces
/// Gamma subset Gamma' pairs for strict-monotonicity tests. The result keeps
/// the parent's geometry_id (the region is unchanged).
PolygonDomain refine_partition(const PolygonDomain& domain, BoundaryLabel part, double shrink);

/// Hypothesis check for declared-mixed problems: both parts nonempty.
/// Throws EmptyPart otherwise.
void validate_mixed_partition(const PolygonDomain& domain);
void validate_mixed_partition(const BoxDomain& box);

} // namespace speclab
