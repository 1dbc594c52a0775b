#include "hdremesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>

#include "hdremesh/errors.hpp"

namespace hdremesh {

namespace {

double longest_edge_squared(const Vec3& a, const Vec3& b, const Vec3& c) {
    return std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
}

std::string element_label(std::size_t e) { return "element " + std::to_string(e); }

} // namespace

bool is_degenerate(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double area = 0.5 * (b - a).cross(c - a).norm();
    const double longest2 = longest_edge_squared(a, b, c);
    return !(area > kDegenerateAreaFactor * longest2) || longest2 == 0.0;
}

SurfaceMesh SurfaceMesh::build(std::span<const Vec3> positions, std::span<const Triangle> triangles,
                               DimensionMode mode) {
    return build_with_history(positions, positions, triangles, mode);
}

SurfaceMesh SurfaceMesh::build_with_history(std::span<const Vec3> initial,
                                            std::span<const Vec3> current,
                                            std::span<const Triangle> triangles,
                                            DimensionMode mode) {
    if (initial.size() != current.size()) {
        throw ArgumentError("initial and current configurations differ in node count");
    }
    if (triangles.empty()) {
        throw ArgumentError("a mesh needs at least one triangle");
    }

    SurfaceMesh mesh;
    mesh.mode_ = mode;
    mesh.nodes_.reserve(initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) {
        mesh.nodes_.push_back({initial[i], current[i]});
    }

    std::map<std::array<NodeIndex, 3>, std::size_t> seen;
    mesh.elements_.reserve(triangles.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const Triangle& tri = triangles[t];
        for (NodeIndex v : tri) {
            if (v >= initial.size()) {
                throw TopologyError(element_label(t) + " references node " + std::to_string(v) +
                                        " out of range",
                                    t);
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw TopologyError(element_label(t) + " repeats a vertex", t);
        }
        auto key = tri;
        std::sort(key.begin(), key.end());
        if (auto [it, inserted] = seen.emplace(key, t); !inserted) {
            throw TopologyError(element_label(t) + " duplicates " + element_label(it->second), t);
        }
        mesh.elements_.push_back({tri});
    }

    mesh.validate_positions(initial, "initial");
    mesh.validate_positions(current, "current");
    mesh.build_edges();
    return mesh;
}

void SurfaceMesh::validate_positions(std::span<const Vec3> positions, const char* what) const {
    if (positions.size() != nodes_.size()) {
        throw ArgumentError(std::string(what) + " configuration has the wrong node count");
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!positions[i].allFinite()) {
            throw ArgumentError(std::string(what) + " position of node " + std::to_string(i) +
                                " is not finite");
        }
        if (mode_ == DimensionMode::planar2d && positions[i].z() != 0.0) {
            throw ArgumentError(std::string(what) + " position of node " + std::to_string(i) +
                                " has nonzero z in planar mode");
        }
    }
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        const auto& v = elements_[e].vertices;
        if (is_degenerate(positions[v[0]], positions[v[1]], positions[v[2]])) {
            throw DegeneracyError(element_label(e) + " is degenerate in the " + what +
                                      " configuration",
                                  e);
        }
    }
}

void SurfaceMesh::build_edges() {
    struct HalfEdge {
        NodeIndex lo;
        NodeIndex hi;
        ElementIndex element;
        int local;
        bool forward; // traversed lo -> hi
    };
    std::vector<HalfEdge> half;
    half.reserve(3 * elements_.size());
    for (ElementIndex e = 0; e < elements_.size(); ++e) {
        const auto& v = elements_[e].vertices;
        for (int i = 0; i < 3; ++i) {
            const NodeIndex a = v[i];
            const NodeIndex b = v[(i + 1) % 3];
            half.push_back({std::min(a, b), std::max(a, b), e, i, a < b});
        }
    }
    std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return std::tie(x.lo, x.hi, x.element) < std::tie(y.lo, y.hi, y.element);
    });

    edges_.clear();
    element_edges_.assign(elements_.size(), {invalid_index, invalid_index, invalid_index});
    boundary_edge_count_ = 0;
    for (std::size_t i = 0; i < half.size();) {
        std::size_t j = i;
        while (j < half.size() && half[j].lo == half[i].lo && half[j].hi == half[i].hi) {
            ++j;
        }
        const std::size_t count = j - i;
        if (count > 2) {
            throw TopologyError("non-manifold edge (" + std::to_string(half[i].lo) + ", " +
                                    std::to_string(half[i].hi) + ") has " +
                                    std::to_string(count) + " incident elements",
                                half[i + 2].element);
        }
        if (count == 2 && half[i].forward == half[i + 1].forward) {
            throw TopologyError("inconsistent winding across edge (" + std::to_string(half[i].lo) +
                                    ", " + std::to_string(half[i].hi) + ")",
                                half[i + 1].element);
        }
        const EdgeIndex id = edges_.size();
        EdgeRecord rec{{half[i].lo, half[i].hi},
                       {half[i].element, count == 2 ? half[i + 1].element : invalid_index}};
        edges_.push_back(rec);
        for (std::size_t k = i; k < j; ++k) {
            element_edges_[half[k].element][half[k].local] = id;
        }
        if (count == 1) {
            ++boundary_edge_count_;
        }
        i = j;
    }
}

std::vector<Vec3> SurfaceMesh::positions(Configuration config) const {
    std::vector<Vec3> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) {
        out.push_back(config == Configuration::initial ? n.initial : n.current);
    }
    return out;
}

std::vector<Triangle> SurfaceMesh::triangles() const {
    std::vector<Triangle> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) {
        out.push_back(e.vertices);
    }
    return out;
}

std::array<Vec3, 3> SurfaceMesh::corners(ElementIndex e, Configuration config) const {
    const auto& v = triangle(e);
    return {position(v[0], config), position(v[1], config), position(v[2], config)};
}

void SurfaceMesh::set_positions(Configuration config, std::span<const Vec3> positions) {
    validate_positions(positions, config == Configuration::initial ? "initial" : "current");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        (config == Configuration::initial ? nodes_[i].initial : nodes_[i].current) = positions[i];
    }
}

ElementBasis element_basis(const SurfaceMesh& mesh, ElementIndex e, Configuration config) {
    if (e >= mesh.element_count()) {
        throw ArgumentError(element_label(e) + " does not exist");
    }
    const auto [a, b, c] = mesh.corners(e, config);
    if (is_degenerate(a, b, c)) {
        throw DegeneracyError(element_label(e) + " is degenerate", e);
    }
    ElementBasis basis{a, b - a, c - a, Vec3::Zero()};
    basis.normal = basis.u1.cross(basis.u2).normalized();
    return basis;
}

Vec3 centroid(const SurfaceMesh& mesh, ElementIndex e, Configuration config) {
    const auto [a, b, c] = mesh.corners(e, config);
    return (a + b + c) / 3.0;
}

double element_area(const SurfaceMesh& mesh, ElementIndex e, Configuration config) {
    const auto [a, b, c] = mesh.corners(e, config);
    return 0.5 * (b - a).cross(c - a).norm();
}

double aspect_ratio(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double la = (c - b).norm();
    const double lb = (a - c).norm();
    const double lc = (b - a).norm();
    const double area = 0.5 * (b - a).cross(c - a).norm();
    const double s = 0.5 * (la + lb + lc);
    const double prod = la * lb * lc;
    if (area <= 0.0 || prod <= 0.0) {
        return 0.0;
    }
    // r_in = A / s, r_circ = abc / (4 A)
    return std::min(1.0, 8.0 * area * area / (s * prod));
}

double aspect_ratio(const SurfaceMesh& mesh, ElementIndex e, Configuration config) {
    const auto [a, b, c] = mesh.corners(e, config);
    return aspect_ratio(a, b, c);
}

std::vector<double> aspect_ratios(const SurfaceMesh& mesh, Configuration config) {
    std::vector<double> out(mesh.element_count());
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        out[e] = aspect_ratio(mesh, e, config);
    }
    return out;
}

QuantileSummary mesh_quality_summary(const SurfaceMesh& mesh, Configuration config) {
    const auto ar = aspect_ratios(mesh, config);
    return summarize(ar);
}

double total_area(const SurfaceMesh& mesh, Configuration config) {
    double sum = 0.0;
    for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
        sum += element_area(mesh, e, config);
    }
    return sum;
}

double median_edge_length(const SurfaceMesh& mesh, Configuration config) {
    std::vector<double> lengths;
    lengths.reserve(mesh.edge_count());
    for (const auto& edge : mesh.edges()) {
        lengths.push_back((mesh.position(edge.nodes[1], config) -
                           mesh.position(edge.nodes[0], config))
                              .norm());
    }
    return median(lengths);
}

std::vector<std::vector<NodeIndex>> boundary_loops(const SurfaceMesh& mesh) {
    std::unordered_map<NodeIndex, NodeIndex> next;
    for (EdgeIndex k = 0; k < mesh.edge_count(); ++k) {
        const auto& edge = mesh.edge(k);
        if (!edge.is_boundary()) {
            continue;
        }
        const auto& tri = mesh.triangle(edge.elements[0]);
        for (int i = 0; i < 3; ++i) {
            const NodeIndex a = tri[i];
            const NodeIndex b = tri[(i + 1) % 3];
            if (std::min(a, b) == edge.nodes[0] && std::max(a, b) == edge.nodes[1]) {
                if (!next.emplace(a, b).second) {
                    throw TopologyError("boundary is not a set of simple loops at node " +
                                        std::to_string(a));
                }
            }
        }
    }

    std::vector<NodeIndex> starts;
    starts.reserve(next.size());
    for (const auto& [a, b] : next) {
        starts.push_back(a);
    }
    std::sort(starts.begin(), starts.end());

    std::vector<std::vector<NodeIndex>> loops;
    std::unordered_map<NodeIndex, bool> visited;
    for (NodeIndex start : starts) {
        if (visited[start]) {
            continue;
        }
        std::vector<NodeIndex> loop;
        NodeIndex cur = start;
        do {
            visited[cur] = true;
            loop.push_back(cur);
            auto it = next.find(cur);
            if (it == next.end()) {
                throw TopologyError("open boundary chain at node " + std::to_string(cur));
            }
            cur = it->second;
        } while (cur != start && loop.size() <= next.size());
        loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace hdremesh
