#include "speclab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "speclab/format.hpp"

namespace speclab {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

double tri_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return 0.5 * cross2(b - a, c - a);
}

// Inclusive: points on the triangle boundary count as contained.
bool triangle_contains(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& c, const Eigen::Vector2d& p, double tol) {
    return cross2(b - a, p - a) >= -tol && cross2(c - b, p - b) >= -tol &&
           cross2(a - c, p - c) >= -tol;
}

Mesh ear_clip(const PolygonDomain& domain) {
    const auto& pts = domain.vertices();
    const int n = domain.num_segments();
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max({scale, std::abs(p.x()), std::abs(p.y())});
    const double tol = 1e-12 * std::max(scale * scale, 1.0);

    Mesh mesh;
    mesh.nodes = pts;
    std::vector<int> rem(n);
    for (int i = 0; i < n; ++i) rem[i] = i;

    while (rem.size() > 3) {
        const int r = static_cast<int>(rem.size());
        int clip_pos = -1;
        // rem stays sorted, so scanning positions in order visits ears by
        // ascending original vertex index.
        for (int pos = 0; pos < r && clip_pos < 0; ++pos) {
            const int ip = rem[(pos + r - 1) % r];
            const int ic = rem[pos];
            const int in = rem[(pos + 1) % r];
            if (cross2(pts[ic] - pts[ip], pts[in] - pts[ic]) <= tol) continue; // reflex/flat
            bool blocked = false;
            for (int q = 0; q < r && !blocked; ++q) {
                const int iq = rem[q];
                if (iq == ip || iq == ic || iq == in) continue;
                if (triangle_contains(pts[ip], pts[ic], pts[in], pts[iq], tol)) blocked = true;
            }
            if (!blocked) clip_pos = pos;
        }
        if (clip_pos < 0)
            throw Error(ErrorCode::EarClippingFailed, "no clippable ear found");
        const int r2 = static_cast<int>(rem.size());
        mesh.triangles.push_back({rem[(clip_pos + r2 - 1) % r2], rem[clip_pos],
                                  rem[(clip_pos + 1) % r2]});
        rem.erase(rem.begin() + clip_pos);
    }
    if (tri_area(pts[rem[0]], pts[rem[1]], pts[rem[2]]) <= tol)
        throw Error(ErrorCode::EarClippingFailed, "final triangle is degenerate");
    mesh.triangles.push_back({rem[0], rem[1], rem[2]});
    return mesh;
}

} // namespace

Mesh triangulate(const PolygonDomain& domain) {
    const int n = domain.num_segments();
    Mesh mesh;
    if (is_convex(domain)) {
        mesh.nodes = domain.vertices();
        Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
        for (const auto& p : mesh.nodes) centroid += p;
        centroid /= static_cast<double>(n);
        mesh.nodes.push_back(centroid);
        for (int i = 0; i < n; ++i) mesh.triangles.push_back({i, (i + 1) % n, n});
    } else {
        mesh = ear_clip(domain);
    }
    for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({i, (i + 1) % n, i});
    mesh.segment_labels = domain.labels();
    mesh.level = 0;
    return mesh;
}

Mesh refine(const Mesh& mesh) {
    Mesh out;
    out.nodes = mesh.nodes;
    out.segment_labels = mesh.segment_labels;
    out.level = mesh.level + 1;

    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int idx = static_cast<int>(out.nodes.size());
        out.nodes.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
        midpoint.emplace(key, idx);
        return idx;
    };

    for (const auto& t : mesh.triangles) {
        const int ab = mid(t[0], t[1]);
        const int bc = mid(t[1], t[2]);
        const int ca = mid(t[2], t[0]);
        out.triangles.push_back({t[0], ab, ca});
        out.triangles.push_back({ab, t[1], bc});
        out.triangles.push_back({ca, bc, t[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    for (const auto& e : mesh.boundary_edges) {
        const int m = mid(e.a, e.b);
        out.boundary_edges.push_back({e.a, m, e.segment});
        out.boundary_edges.push_back({m, e.b, e.segment});
    }
    return out;
}

double Mesh::total_area() const {
    double s = 0.0;
    for (const auto& t : triangles) s += tri_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
    return s;
}

double Mesh::max_diameter() const {
    double d = 0.0;
    for (const auto& t : triangles) {
        d = std::max(d, (nodes[t[0]] - nodes[t[1]]).norm());
        d = std::max(d, (nodes[t[1]] - nodes[t[2]]).norm());
        d = std::max(d, (nodes[t[2]] - nodes[t[0]]).norm());
    }
    return d;
}

int Mesh::edge_count() const {
    std::map<std::pair<int, int>, int> seen;
    for (const auto& t : triangles)
        for (int e = 0; e < 3; ++e) seen[std::minmax(t[e], t[(e + 1) % 3])]++;
    return static_cast<int>(seen.size());
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
    os << mesh.nodes.size() << " " << mesh.triangles.size() << " " << mesh.boundary_edges.size()
       << "\n";
    for (const auto& p : mesh.nodes) os << fmt_g17(p.x()) << " " << fmt_g17(p.y()) << "\n";
    for (const auto& t : mesh.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& e : mesh.boundary_edges)
        os << e.a << " " << e.b << " " << e.segment << " " << label_char(mesh.edge_label(e))
           << "\n";
}

} // namespace speclab
