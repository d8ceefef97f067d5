#pragma once

// Planar primitives shared by every construction: node identifiers, point
// sets, the directed-edge total order, cone partitions and unit disk graphs.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace udgspan {

struct NodeId {
    std::uint64_t value = 0;
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend constexpr bool operator==(Point, Point) = default;
};

inline double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

struct Node {
    NodeId id;
    Point pos;
    friend constexpr bool operator==(const Node&, const Node&) = default;
};

/// Position of a node inside its PointSet. All graph structures index nodes
/// by position; NodeIds only matter for tie-breaking and I/O.
using NodeIndex = std::size_t;

class PointSet {
public:
    PointSet() = default;

    /// Throws std::invalid_argument on duplicate ids, duplicate coordinates
    /// or non-finite coordinates.
    explicit PointSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        index_.reserve(nodes_.size());
        for (NodeIndex i = 0; i < nodes_.size(); ++i) {
            const auto& n = nodes_[i];
            if (!std::isfinite(n.pos.x) || !std::isfinite(n.pos.y))
                throw std::invalid_argument("node " + std::to_string(n.id.value) +
                                            " has a non-finite coordinate");
            if (!index_.emplace(n.id.value, i).second)
                throw std::invalid_argument("duplicate node id " + std::to_string(n.id.value));
        }
        std::vector<NodeIndex> order(nodes_.size());
        for (NodeIndex i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
            const auto& pa = nodes_[a].pos;
            const auto& pb = nodes_[b].pos;
            return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
        });
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (nodes_[order[i]].pos == nodes_[order[i - 1]].pos)
                throw std::invalid_argument(
                    "nodes " + std::to_string(nodes_[order[i - 1]].id.value) + " and " +
                    std::to_string(nodes_[order[i]].id.value) + " share coordinates");
        }
    }

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    std::span<const Node> nodes() const { return nodes_; }
    const Node& operator[](NodeIndex i) const { return nodes_[i]; }
    NodeId id(NodeIndex i) const { return nodes_[i].id; }
    Point pos(NodeIndex i) const { return nodes_[i].pos; }

    NodeIndex index_of(NodeId id) const {
        auto it = index_.find(id.value);
        if (it == index_.end())
            throw std::out_of_range("unknown node id " + std::to_string(id.value));
        return it->second;
    }
    bool contains(NodeId id) const { return index_.count(id.value) != 0; }

    double squared_distance(NodeIndex a, NodeIndex b) const {
        return udgspan::squared_distance(nodes_[a].pos, nodes_[b].pos);
    }
    double distance(NodeIndex a, NodeIndex b) const {
        return udgspan::distance(nodes_[a].pos, nodes_[b].pos);
    }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.nodes_ == b.nodes_; }

private:
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, NodeIndex> index_;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

inline PointSetPtr make_point_set(std::vector<Node> nodes) {
    return std::make_shared<const PointSet>(std::move(nodes));
}

struct DirectedEdge {
    NodeIndex src = 0;
    NodeIndex dst = 0;
    friend constexpr auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Identifier of a directed edge: (length, source id, sink id), compared
/// lexicographically. The length is kept squared; squaring is monotone and
/// the squared form is exactly symmetric in the endpoints.
struct EdgeKey {
    double length2 = 0.0;
    NodeId src;
    NodeId dst;

    double length() const { return std::sqrt(length2); }

    friend std::strong_ordering operator<=>(const EdgeKey& a, const EdgeKey& b) {
        if (a.length2 < b.length2) return std::strong_ordering::less;
        if (b.length2 < a.length2) return std::strong_ordering::greater;
        if (auto c = a.src <=> b.src; c != 0) return c;
        return a.dst <=> b.dst;
    }
    friend bool operator==(const EdgeKey& a, const EdgeKey& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
};

inline EdgeKey edge_key(const PointSet& pts, DirectedEdge e) {
    return EdgeKey{pts.squared_distance(e.src, e.dst), pts.id(e.src), pts.id(e.dst)};
}

inline std::strong_ordering compare_edge_ids(const PointSet& pts, DirectedEdge a, DirectedEdge b) {
    return edge_key(pts, a) <=> edge_key(pts, b);
}

/// ID(uv) = min(ID(u->v), ID(v->u)).
inline EdgeKey undirected_edge_id(const PointSet& pts, NodeIndex u, NodeIndex v) {
    if (u == v) throw std::invalid_argument("undirected_edge_id: endpoints coincide");
    return std::min(edge_key(pts, {u, v}), edge_key(pts, {v, u}));
}

/// Sorts directed edges by EdgeKey and drops duplicates.
inline void canonicalize(const PointSet& pts, std::vector<DirectedEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [&](DirectedEdge a, DirectedEdge b) {
        return compare_edge_ids(pts, a, b) < 0;
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

class ConeScheme {
public:
    explicit ConeScheme(int k) : k_(k) {
        if (k < 3) throw std::invalid_argument("cone count must be at least 3, got " + std::to_string(k));
    }

    int k() const { return k_; }
    double theta() const { return 2.0 * std::numbers::pi / k_; }

    /// Cone i covers [i*theta, (i+1)*theta) counterclockwise from the
    /// positive x-axis; a target on a boundary ray belongs to the higher cone.
    int cone_index(Point apex, Point target) const {
        if (apex == target) throw std::invalid_argument("cone_index: apex and target coincide");
        double angle = std::atan2(target.y - apex.y, target.x - apex.x);
        if (angle < 0.0) angle += 2.0 * std::numbers::pi;
        const int idx = static_cast<int>(std::floor(angle / theta()));
        return std::clamp(idx, 0, k_ - 1);
    }

    friend bool operator==(const ConeScheme&, const ConeScheme&) = default;

private:
    int k_;
};

inline int cone_index(const ConeScheme& scheme, Point apex, Point target) {
    return scheme.cone_index(apex, target);
}

/// Undirected edge stored with src < dst by position.
struct UndirectedEdge {
    NodeIndex a = 0;
    NodeIndex b = 0;
    friend constexpr auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

inline UndirectedEdge make_undirected(NodeIndex u, NodeIndex v) {
    return u < v ? UndirectedEdge{u, v} : UndirectedEdge{v, u};
}

inline void sort_undirected(const PointSet& pts, std::vector<UndirectedEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [&](UndirectedEdge x, UndirectedEdge y) {
        return undirected_edge_id(pts, x.a, x.b) < undirected_edge_id(pts, y.a, y.b);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

class UnitDiskGraph {
public:
    UnitDiskGraph(PointSetPtr points, double radius) : points_(std::move(points)), radius_(radius) {
        if (!points_) throw std::invalid_argument("UnitDiskGraph: null point set");
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::invalid_argument("UnitDiskGraph: radius must be positive and finite");
        const auto& pts = *points_;
        const double r2 = radius * radius;
        adjacency_.resize(pts.size());
        for (NodeIndex u = 0; u < pts.size(); ++u) {
            for (NodeIndex v = u + 1; v < pts.size(); ++v) {
                if (pts.squared_distance(u, v) <= r2) {
                    edges_.push_back({u, v});
                    adjacency_[u].push_back(v);
                    adjacency_[v].push_back(u);
                }
            }
        }
        sort_undirected(pts, edges_);
    }

    const PointSet& points() const { return *points_; }
    const PointSetPtr& points_ptr() const { return points_; }
    double radius() const { return radius_; }
    std::size_t size() const { return points_->size(); }
    /// Sorted by undirected EdgeKey.
    std::span<const UndirectedEdge> edges() const { return edges_; }
    /// Neighbors in increasing position order.
    std::span<const NodeIndex> neighbors(NodeIndex u) const { return adjacency_[u]; }

    bool adjacent(NodeIndex u, NodeIndex v) const {
        if (u == v) return false;
        return points_->squared_distance(u, v) <= radius_ * radius_;
    }

    bool connected() const {
        if (size() <= 1) return true;
        std::vector<char> seen(size(), 0);
        std::vector<NodeIndex> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            NodeIndex u = stack.back();
            stack.pop_back();
            for (NodeIndex v : adjacency_[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == size();
    }

private:
    PointSetPtr points_;
    double radius_;
    std::vector<UndirectedEdge> edges_;
    std::vector<std::vector<NodeIndex>> adjacency_;
};

inline UnitDiskGraph build_udg(PointSetPtr points, double radius = 1.0) {
    return UnitDiskGraph(std::move(points), radius);
}

/// Longest over shortest length. Throws on an empty set.
inline double aspect_ratio(std::span<const double> lengths) {
    if (lengths.empty()) throw std::invalid_argument("aspect_ratio: empty edge set");
    auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
    return *hi / *lo;
}

inline double aspect_ratio(const PointSet& pts, std::span<const UndirectedEdge> edges) {
    std::vector<double> lengths;
    lengths.reserve(edges.size());
    for (auto e : edges) lengths.push_back(pts.distance(e.a, e.b));
    return aspect_ratio(lengths);
}

inline double min_pairwise_distance(const PointSet& pts) {
    double best2 = std::numeric_limits<double>::infinity();
    for (NodeIndex u = 0; u < pts.size(); ++u)
        for (NodeIndex v = u + 1; v < pts.size(); ++v)
            best2 = std::min(best2, pts.squared_distance(u, v));
    return std::sqrt(best2);
}

/// True iff no two nodes are closer than lambda.
inline bool is_civilized(const PointSet& pts, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("is_civilized: lambda must be positive");
    return min_pairwise_distance(pts) >= lambda;
}

/// Directed edge set over a point set, tagged with the cone scheme and UDG
/// radius it was built under. Edges are unique and sorted by EdgeKey.
class DirectedTopology {
public:
    DirectedTopology(PointSetPtr points, ConeScheme scheme, double radius,
                     std::vector<DirectedEdge> edges)
        : points_(std::move(points)), scheme_(scheme), radius_(radius), edges_(std::move(edges)) {
        for (auto e : edges_) {
            if (e.src >= points_->size() || e.dst >= points_->size() || e.src == e.dst)
                throw std::invalid_argument("DirectedTopology: edge endpoint out of range");
        }
        canonicalize(*points_, edges_);
    }

    const PointSet& points() const { return *points_; }
    const PointSetPtr& points_ptr() const { return points_; }
    const ConeScheme& scheme() const { return scheme_; }
    double radius() const { return radius_; }
    std::span<const DirectedEdge> edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }

    bool contains(DirectedEdge e) const {
        const auto& pts = *points_;
        return std::binary_search(edges_.begin(), edges_.end(), e, [&](DirectedEdge a, DirectedEdge b) {
            return compare_edge_ids(pts, a, b) < 0;
        });
    }

    /// Undirected view, sorted by undirected EdgeKey.
    std::vector<UndirectedEdge> undirected_edges() const {
        std::vector<UndirectedEdge> out;
        out.reserve(edges_.size());
        for (auto e : edges_) out.push_back(make_undirected(e.src, e.dst));
        sort_undirected(*points_, out);
        return out;
    }

private:
    PointSetPtr points_;
    ConeScheme scheme_;
    double radius_;
    std::vector<DirectedEdge> edges_;
};

}  // namespace udgspan
