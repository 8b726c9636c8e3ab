#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "speclab/geometry.hpp"

namespace speclab {

/// Conforming triangulation of a polygon domain. Triangles are
/// counterclockwise; boundary edges carry the id of the polygon segment they
/// lie on, so labels survive refinement.
struct Mesh {
    struct BoundaryEdge {
        int a = 0;
        int b = 0;
        int segment = 0;
    };

    std::vector<Eigen::Vector2d> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<BoundaryLabel> segment_labels; // per polygon segment id
    int level = 0;

    BoundaryLabel edge_label(const BoundaryEdge& e) const { return segment_labels[e.segment]; }

    double total_area() const;
    double max_diameter() const;
    /// Number of distinct undirected edges.
    int edge_count() const;
};

/// Level-0 triangulation: centroid fan for convex polygons, ear clipping
/// otherwise. Deterministic. Throws EarClippingFailed if no ear can be
/// clipped (impossible for a valid simple polygon; indicates an upstream bug).
Mesh triangulate(const PolygonDomain& domain);

/// Uniform red refinement: each triangle splits into 4 via edge midpoints.
Mesh refine(const Mesh& mesh);

/// Plain-text dump: counts, node coordinates, triangle indices, boundary
/// edges with segment id and label.
void write_mesh(std::ostream& os, const Mesh& mesh);

} // namespace speclab
