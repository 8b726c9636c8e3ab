#include "speclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "speclab/format.hpp"

namespace speclab {

namespace {

constexpr double kRankTol = 1e-12;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

double signed_area(const std::vector<Eigen::Vector2d>& pts) {
    double s = 0.0;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        s += cross2(a, b);
    }
    return 0.5 * s;
}

int orient_sign(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                double tol) {
    const double c = cross2(a - o, b - o);
    if (c > tol) return 1;
    if (c < -tol) return -1;
    return 0;
}

bool on_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                double tol) {
    return p.x() <= std::max(a.x(), b.x()) + tol && p.x() >= std::min(a.x(), b.x()) - tol &&
           p.y() <= std::max(a.y(), b.y()) + tol && p.y() >= std::min(a.y(), b.y()) - tol;
}

// Any contact between the two closed segments counts as an intersection.
bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2, double tol) {
    const int o1 = orient_sign(p1, p2, q1, tol);
    const int o2 = orient_sign(p1, p2, q2, tol);
    const int o3 = orient_sign(q1, q2, p1, tol);
    const int o4 = orient_sign(q1, q2, p2, tol);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(q1, p1, p2, tol)) return true;
    if (o2 == 0 && on_segment(q2, p1, p2, tol)) return true;
    if (o3 == 0 && on_segment(p1, q1, q2, tol)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2, tol)) return true;
    return false;
}

double coordinate_scale(const std::vector<Eigen::Vector2d>& pts) {
    double s = 0.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p.x()), std::abs(p.y())});
    return std::max(s, 1.0);
}

// Canonical region serialization: collinear vertices removed, vertex list
// rotated so the lexicographically smallest point comes first. Insensitive
// to the split points introduced by refine_partition.
std::string region_id(const std::vector<Eigen::Vector2d>& pts) {
    const int n = static_cast<int>(pts.size());
    const double tol = 1e-12 * coordinate_scale(pts);
    std::vector<Eigen::Vector2d> corners;
    for (int i = 0; i < n; ++i) {
        const auto& prev = pts[(i + n - 1) % n];
        const auto& cur = pts[i];
        const auto& next = pts[(i + 1) % n];
        if (std::abs(cross2(cur - prev, next - cur)) > tol) corners.push_back(cur);
    }
    if (corners.empty()) corners = pts;
    int start = 0;
    for (int i = 1; i < static_cast<int>(corners.size()); ++i) {
        if (corners[i].x() < corners[start].x() ||
            (corners[i].x() == corners[start].x() && corners[i].y() < corners[start].y()))
            start = i;
    }
    std::ostringstream os;
    os << "polygon:";
    for (int i = 0; i < static_cast<int>(corners.size()); ++i) {
        const auto& p = corners[(start + i) % corners.size()];
        os << fmt_g17(p.x()) << "," << fmt_g17(p.y()) << ";";
    }
    return os.str();
}

int matrix_rank(const std::vector<Eigen::Vector3d>& normals, int d) {
    Eigen::MatrixXd A(static_cast<int>(normals.size()), d);
    for (int i = 0; i < static_cast<int>(normals.size()); ++i)
        for (int j = 0; j < d; ++j) A(i, j) = normals[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > kRankTol) ++rank;
    return rank;
}

BoundaryLabel other(BoundaryLabel l) {
    return l == BoundaryLabel::Dirichlet ? BoundaryLabel::Neumann : BoundaryLabel::Dirichlet;
}

} // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SelfIntersecting: return "SelfIntersecting";
        case ErrorCode::ClockwiseOrDegenerate: return "ClockwiseOrDegenerate";
        case ErrorCode::LabelCountMismatch: return "LabelCountMismatch";
        case ErrorCode::EmptyPart: return "EmptyPart";
        case ErrorCode::NothingToShrink: return "NothingToShrink";
        case ErrorCode::EarClippingFailed: return "EarClippingFailed";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::MassNotPD: return "MassNotPD";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::BoundaryConditionViolated: return "BoundaryConditionViolated";
        case ErrorCode::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

PolygonDomain build_polygon(const std::vector<Eigen::Vector2d>& points,
                            const std::vector<BoundaryLabel>& labels) {
    const int n = static_cast<int>(points.size());
    if (n < 3)
        throw Error(ErrorCode::ClockwiseOrDegenerate, "polygon needs at least 3 vertices");
    if (static_cast<int>(labels.size()) != n)
        throw Error(ErrorCode::LabelCountMismatch,
                    "expected " + std::to_string(n) + " labels, got " +
                        std::to_string(labels.size()));

    const double scale = coordinate_scale(points);
    const double tol = 1e-12 * scale;

    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d e = points[(i + 1) % n] - points[i];
        if (e.norm() <= tol)
            throw Error(ErrorCode::ClockwiseOrDegenerate,
                        "zero-length edge at segment " + std::to_string(i));
    }

    // Fold-back at a shared vertex (anti-parallel adjacent edges).
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d a = points[i] - points[(i + n - 1) % n];
        const Eigen::Vector2d b = points[(i + 1) % n] - points[i];
        if (std::abs(cross2(a, b)) <= tol * std::max(a.norm(), 1.0) * std::max(b.norm(), 1.0) &&
            a.dot(b) < 0.0)
            throw Error(ErrorCode::SelfIntersecting,
                        "edges fold back at vertex " + std::to_string(i));
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(points[i], points[(i + 1) % n], points[j],
                                   points[(j + 1) % n], tol))
                throw Error(ErrorCode::SelfIntersecting,
                            "segments " + std::to_string(i) + " and " + std::to_string(j) +
                                " intersect");
        }
    }

    const double area = signed_area(points);
    if (area <= tol * scale)
        throw Error(ErrorCode::ClockwiseOrDegenerate,
                    "vertices must be counterclockwise with positive area");

    PolygonDomain d;
    d.vertices_ = points;
    d.labels_ = labels;
    d.area_ = area;
    d.normals_.resize(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d e = (points[(i + 1) % n] - points[i]).normalized();
        d.normals_[i] = Eigen::Vector2d(e.y(), -e.x()); // outward for CCW orientation
    }
    d.geometry_id_ = region_id(points);
    return d;
}

double PolygonDomain::boundary_length() const {
    double s = 0.0;
    for (int i = 0; i < num_segments(); ++i) s += segment_length(i);
    return s;
}

double PolygonDomain::part_length(BoundaryLabel part) const {
    double s = 0.0;
    for (int i = 0; i < num_segments(); ++i)
        if (labels_[i] == part) s += segment_length(i);
    return s;
}

bool PolygonDomain::has_label(BoundaryLabel l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

BoxDomain BoxDomain::make(int dim, const std::vector<double>& lengths,
                          const std::array<std::array<BoundaryLabel, 2>, 3>& faces) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorCode::SchemaError, "box dimension must be 2 or 3");
    if (static_cast<int>(lengths.size()) != dim)
        throw Error(ErrorCode::SchemaError, "box needs one side length per axis");
    for (double l : lengths)
        if (!(l > 0.0))
            throw Error(ErrorCode::ClockwiseOrDegenerate, "box side lengths must be positive");

    BoxDomain b;
    b.dim_ = dim;
    for (int a = 0; a < dim; ++a) b.lengths_[a] = lengths[a];
    b.faces_ = faces;
    std::ostringstream os;
    os << "box:" << dim << ":";
    for (int a = 0; a < dim; ++a) os << fmt_g17(lengths[a]) << ";";
    b.geometry_id_ = os.str();
    return b;
}

bool BoxDomain::has_label(BoundaryLabel l) const {
    for (int a = 0; a < dim_; ++a)
        if (faces_[a][0] == l || faces_[a][1] == l) return true;
    return false;
}

bool BoxDomain::is_pi_box() const {
    for (int a = 0; a < dim_; ++a)
        if (lengths_[a] != std::numbers::pi) return false;
    return true;
}

BoxDomain BoxDomain::with_all_faces(BoundaryLabel l) const {
    BoxDomain b = *this;
    for (int a = 0; a < 3; ++a) b.faces_[a] = {l, l};
    return b;
}

TangentSpaceInfo tangent_space_dim(const PolygonDomain& domain, BoundaryLabel part) {
    TangentSpaceInfo info;
    info.part = part;
    for (int i = 0; i < domain.num_segments(); ++i) {
        if (domain.labels()[i] != part) continue;
        const Eigen::Vector3d nu(domain.segment_normal(i).x(), domain.segment_normal(i).y(), 0.0);
        bool known = false;
        for (const auto& m : info.normals)
            if ((m - nu).norm() < 1e-9) known = true;
        if (!known) info.normals.push_back(nu);
    }
    if (info.normals.empty())
        throw Error(ErrorCode::EmptyPart, "boundary part has no segments");
    info.dim = 2 - matrix_rank(info.normals, 2);
    return info;
}

TangentSpaceInfo tangent_space_dim(const BoxDomain& box, BoundaryLabel part) {
    TangentSpaceInfo info;
    info.part = part;
    std::array<bool, 3> axis_present{false, false, false};
    for (int a = 0; a < box.dim(); ++a) {
        for (int end = 0; end < 2; ++end) {
            if (box.face_labels(a)[end] != part) continue;
            Eigen::Vector3d nu = Eigen::Vector3d::Zero();
            nu[a] = end == 0 ? -1.0 : 1.0;
            info.normals.push_back(nu);
            axis_present[a] = true;
        }
    }
    if (info.normals.empty())
        throw Error(ErrorCode::EmptyPart, "boundary part has no faces");
    int rank = 0;
    for (int a = 0; a < box.dim(); ++a)
        if (axis_present[a]) ++rank;
    info.dim = box.dim() - rank;
    return info;
}

bool is_convex(const PolygonDomain& domain) {
    const int n = domain.num_segments();
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d a =
            (domain.segment_end(i) - domain.segment_start(i)).normalized();
        const int j = (i + 1) % n;
        const Eigen::Vector2d b =
            (domain.segment_end(j) - domain.segment_start(j)).normalized();
        if (cross2(a, b) < -1e-12) return false;
    }
    return true;
}

PolygonDomain refine_partition(const PolygonDomain& domain, BoundaryLabel part, double shrink) {
    if (!(shrink > 0.0 && shrink < 1.0))
        throw Error(ErrorCode::SchemaError, "shrink must lie strictly between 0 and 1");
    const auto& labels = domain.labels();
    const auto it = std::find(labels.begin(), labels.end(), part);
    if (it == labels.end())
        throw Error(ErrorCode::NothingToShrink, "no segment carries the requested label");
    const int seg = static_cast<int>(it - labels.begin());

    std::vector<Eigen::Vector2d> pts;
    std::vector<BoundaryLabel> labs;
    const int n = domain.num_segments();
    for (int i = 0; i < n; ++i) {
        pts.push_back(domain.segment_start(i));
        if (i == seg) {
            pts.push_back(domain.segment_start(i) +
                          shrink * (domain.segment_end(i) - domain.segment_start(i)));
            labs.push_back(part);
            labs.push_back(other(part));
        } else {
            labs.push_back(labels[i]);
        }
    }
    PolygonDomain out = build_polygon(pts, labs);
    out.geometry_id_ = domain.geometry_id();
    return out;
}

void validate_mixed_partition(const PolygonDomain& domain) {
    if (!domain.has_label(BoundaryLabel::Dirichlet))
        throw Error(ErrorCode::EmptyPart, "mixed problem requires a Dirichlet segment");
    if (!domain.has_label(BoundaryLabel::Neumann))
        throw Error(ErrorCode::EmptyPart, "mixed problem requires a Neumann segment");
}

void validate_mixed_partition(const BoxDomain& box) {
    if (!box.has_label(BoundaryLabel::Dirichlet))
        throw Error(ErrorCode::EmptyPart, "mixed problem requires a Dirichlet face");
    if (!box.has_label(BoundaryLabel::Neumann))
        throw Error(ErrorCode::EmptyPart, "mixed problem requires a Neumann face");
}

} // namespace speclab
