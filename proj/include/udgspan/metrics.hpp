#pragma once

// Exact stretch, weight and degree measurements, plus closed-form bounds
// for the cone-based constructions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace udgspan {

struct WeightedEdge {
    NodeIndex a = 0;
    NodeIndex b = 0;
    double weight = 0.0;
};

/// Undirected graph with nonnegative edge weights.
struct WeightedGraph {
    std::size_t order = 0;
    std::vector<WeightedEdge> edges;
};

/// Edge cost |uv| (length) or |uv|^beta (power).
struct WeightMode {
    double exponent = 1.0;

    static WeightMode length() { return {1.0}; }
    static WeightMode power(double beta) { return {beta}; }

    double cost(double len) const { return exponent == 1.0 ? len : std::pow(len, exponent); }
};

inline WeightedGraph weighted(const PointSet& pts, std::span<const UndirectedEdge> edges, WeightMode mode) {
    WeightedGraph g{pts.size(), {}};
    g.edges.reserve(edges.size());
    for (auto e : edges) g.edges.push_back({e.a, e.b, mode.cost(pts.distance(e.a, e.b))});
    return g;
}

/// Dense all-pairs distance table; unreachable pairs are +inf.
class DistanceTable {
public:
    explicit DistanceTable(std::size_t n)
        : n_(n), d_(n * n, std::numeric_limits<double>::infinity()) {
        for (std::size_t i = 0; i < n; ++i) at(i, i) = 0.0;
    }
    std::size_t size() const { return n_; }
    double& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

enum class ShortestPathMethod { automatic, matrix, per_source };

inline constexpr std::size_t kMatrixMethodLimit = 512;

inline DistanceTable floyd_warshall(const WeightedGraph& g) {
    DistanceTable d(g.order);
    for (auto e : g.edges) {
        if (e.weight < 0.0) throw std::invalid_argument("negative edge weight");
        d.at(e.a, e.b) = std::min(d.at(e.a, e.b), e.weight);
        d.at(e.b, e.a) = std::min(d.at(e.b, e.a), e.weight);
    }
    const std::size_t n = g.order;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i) {
            const double dim = d.at(i, m);
            if (dim == std::numeric_limits<double>::infinity()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dim + d.at(m, j);
                if (via < d.at(i, j)) d.at(i, j) = via;
            }
        }
    return d;
}

inline std::vector<double> dijkstra(const std::vector<std::vector<std::pair<NodeIndex, double>>>& adj,
                                    NodeIndex source) {
    std::vector<double> dist(adj.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, NodeIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (auto [v, w] : adj[u]) {
            if (du + w < dist[v]) {
                dist[v] = du + w;
                heap.push({dist[v], v});
            }
        }
    }
    return dist;
}

inline DistanceTable repeated_dijkstra(const WeightedGraph& g) {
    std::vector<std::vector<std::pair<NodeIndex, double>>> adj(g.order);
    for (auto e : g.edges) {
        if (e.weight < 0.0) throw std::invalid_argument("negative edge weight");
        adj[e.a].push_back({e.b, e.weight});
        adj[e.b].push_back({e.a, e.weight});
    }
    DistanceTable d(g.order);
    for (NodeIndex s = 0; s < g.order; ++s) {
        auto row = dijkstra(adj, s);
        for (NodeIndex t = 0; t < g.order; ++t) d.at(s, t) = row[t];
    }
    return d;
}

inline DistanceTable shortest_paths(const WeightedGraph& g,
                                    ShortestPathMethod method = ShortestPathMethod::automatic) {
    if (method == ShortestPathMethod::automatic)
        method = g.order <= kMatrixMethodLimit ? ShortestPathMethod::matrix : ShortestPathMethod::per_source;
    return method == ShortestPathMethod::matrix ? floyd_warshall(g) : repeated_dijkstra(g);
}

struct StretchResult {
    double factor = 1.0;
    std::optional<std::pair<NodeIndex, NodeIndex>> witness;
};

/// Maximum of d_H/d_G over pairs connected in G. Ties go to the
/// lexicographically smallest (id, id) witness.
inline StretchResult max_stretch(const PointSet& pts, const DistanceTable& dg, const DistanceTable& dh) {
    StretchResult r;
    std::optional<std::pair<NodeId, NodeId>> best_ids;
    for (NodeIndex u = 0; u < pts.size(); ++u)
        for (NodeIndex v = u + 1; v < pts.size(); ++v) {
            const double base = dg.at(u, v);
            if (base == std::numeric_limits<double>::infinity() || base == 0.0) continue;
            const double ratio = dh.at(u, v) / base;
            auto ids = std::minmax(pts.id(u), pts.id(v));
            auto ordered = std::pair{ids.first, ids.second};
            const bool better = !r.witness || ratio > r.factor || (ratio == r.factor && ordered < *best_ids);
            if (better) {
                r.factor = ratio;
                r.witness = pts.id(u) < pts.id(v) ? std::pair{u, v} : std::pair{v, u};
                best_ids = ordered;
            }
        }
    if (!r.witness) r.factor = 1.0;
    return r;
}

namespace detail {

inline void require_subgraph(const UnitDiskGraph& g, std::span<const UndirectedEdge> h) {
    for (auto e : h)
        if (!g.adjacent(e.a, e.b))
            throw std::invalid_argument("subgraph edge " + std::to_string(g.points().id(e.a).value) + "-" +
                                        std::to_string(g.points().id(e.b).value) + " is not a UDG edge");
}

}  // namespace detail

inline StretchResult stretch(const UnitDiskGraph& g, std::span<const UndirectedEdge> h, WeightMode mode,
                             ShortestPathMethod method = ShortestPathMethod::automatic) {
    detail::require_subgraph(g, h);
    const auto& pts = g.points();
    auto dg = shortest_paths(weighted(pts, g.edges(), mode), method);
    auto dh = shortest_paths(weighted(pts, h, mode), method);
    return max_stretch(pts, dg, dh);
}

inline StretchResult length_stretch(const UnitDiskGraph& g, std::span<const UndirectedEdge> h,
                                    ShortestPathMethod method = ShortestPathMethod::automatic) {
    return stretch(g, h, WeightMode::length(), method);
}

inline StretchResult length_stretch(const UnitDiskGraph& g, const DirectedTopology& h,
                                    ShortestPathMethod method = ShortestPathMethod::automatic) {
    return length_stretch(g, h.undirected_edges(), method);
}

inline bool beta_in_range(double beta) { return beta >= 2.0 && beta <= 5.0; }

/// Out-of-range beta is still computed; callers surface the warning via
/// beta_in_range.
inline StretchResult power_stretch(const UnitDiskGraph& g, std::span<const UndirectedEdge> h, double beta,
                                   ShortestPathMethod method = ShortestPathMethod::automatic) {
    return stretch(g, h, WeightMode::power(beta), method);
}

inline StretchResult power_stretch(const UnitDiskGraph& g, const DirectedTopology& h, double beta,
                                   ShortestPathMethod method = ShortestPathMethod::automatic) {
    return power_stretch(g, h.undirected_edges(), beta, method);
}

struct StretchReport {
    double length_stretch = 1.0;
    double power_stretch = 1.0;
    double beta = 2.0;
    std::optional<std::pair<NodeIndex, NodeIndex>> witness;        // length
    std::optional<std::pair<NodeIndex, NodeIndex>> power_witness;  // power
    bool beta_warning = false;
};

inline StretchReport stretch_report(const UnitDiskGraph& g, const DirectedTopology& h, double beta = 2.0) {
    const auto edges = h.undirected_edges();
    auto len = length_stretch(g, edges);
    auto pow = power_stretch(g, edges, beta);
    return {len.factor, pow.factor, beta, len.witness, pow.witness, !beta_in_range(beta)};
}

inline double total_weight(const PointSet& pts, std::span<const UndirectedEdge> edges) {
    double sum = 0.0;
    for (auto e : edges) sum += pts.distance(e.a, e.b);
    return sum;
}

/// Sum of undirected edge lengths; antiparallel pairs count once.
inline double total_weight(const DirectedTopology& t) {
    return total_weight(t.points(), t.undirected_edges());
}

/// Kruskal over the UDG edges. Throws if the UDG is disconnected.
inline double mst_weight(const UnitDiskGraph& g) {
    const auto& pts = g.points();
    if (pts.size() <= 1) return 0.0;
    std::vector<NodeIndex> parent(pts.size());
    std::iota(parent.begin(), parent.end(), NodeIndex{0});
    auto find = [&](NodeIndex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // g.edges() is sorted by undirected EdgeKey, hence by length.
    double sum = 0.0;
    std::size_t joined = 0;
    for (auto e : g.edges()) {
        NodeIndex a = find(e.a), b = find(e.b);
        if (a == b) continue;
        parent[a] = b;
        sum += pts.distance(e.a, e.b);
        if (++joined == pts.size() - 1) break;
    }
    if (joined != pts.size() - 1) throw std::invalid_argument("mst_weight: unit disk graph is disconnected");
    return sum;
}

struct WeightReport {
    double structure_weight = 0.0;
    double mst_weight = 0.0;
    double ratio = 0.0;
};

inline WeightReport weight_report(const UnitDiskGraph& g, const DirectedTopology& t) {
    WeightReport w;
    w.structure_weight = total_weight(t);
    w.mst_weight = mst_weight(g);
    w.ratio = w.mst_weight > 0.0 ? w.structure_weight / w.mst_weight : 0.0;
    return w;
}

struct DegreeStats {
    std::size_t max_degree = 0;
    std::vector<std::size_t> degree;                 // undirected view
    std::vector<std::vector<std::size_t>> cone_in;   // [node][cone], cone taken at the node
    std::vector<std::vector<std::size_t>> cone_out;  // [node][cone]
};

inline DegreeStats degree_stats(const DirectedTopology& t) {
    const auto& pts = t.points();
    const auto k = static_cast<std::size_t>(t.scheme().k());
    DegreeStats s;
    s.degree.assign(pts.size(), 0);
    s.cone_in.assign(pts.size(), std::vector<std::size_t>(k, 0));
    s.cone_out.assign(pts.size(), std::vector<std::size_t>(k, 0));
    for (auto e : t.undirected_edges()) {
        ++s.degree[e.a];
        ++s.degree[e.b];
    }
    for (auto e : t.edges()) {
        ++s.cone_out[e.src][static_cast<std::size_t>(t.scheme().cone_index(pts.pos(e.src), pts.pos(e.dst)))];
        ++s.cone_in[e.dst][static_cast<std::size_t>(t.scheme().cone_index(pts.pos(e.dst), pts.pos(e.src)))];
    }
    if (!s.degree.empty()) s.max_degree = *std::max_element(s.degree.begin(), s.degree.end());
    return s;
}

/// Closed-form guarantees. A bound is present only when its side
/// conditions hold.
struct BoundsReport {
    int k = 0;
    double theta = 0.0;
    std::optional<double> lambda;
    std::optional<double> r;
    std::optional<double> epsilon;
    double beta = 2.0;

    std::optional<double> yao_bound;       // 1/(1 - 2 sin(pi/k)), needs k >= 7
    std::optional<double> yao_sink_bound;  // yao_bound^2
    int yy_max_degree = 0;                 // 2k
    int sink_max_degree = 0;               // k(k+2)

    bool yy_civilized_conditions = false;  // k > 8 and cos - sin > 1/(lambda+1)
    std::optional<double> yy_civilized_bound;

    std::optional<double> sparse_sink_lambda;   // 1/(2 r cos theta)
    bool sparse_sink_stated_condition = false;  // cos - sin > lambda2/(lambda2+1)
    bool sparse_sink_derived_condition = false;      // cos - sin > 1/(lambda2+1)
    bool sparse_sink_conditions = false;           // k >= 8, r > 1, both variants, cos 2theta > 0
    std::optional<double> sparse_sink_bound;

    // Smallest k > 8 with cos(2pi/k) - sin(2pi/k) >= (lambda+eps+1)/((lambda+1)(eps+1)).
    std::optional<double> epsilon_target;
    std::optional<int> epsilon_k;
    std::optional<double> epsilon_length_bound;  // 1 + eps
    std::optional<double> epsilon_power_bound;   // (1 + eps)^beta
};

inline double cone_gap(int k) {
    const double theta = 2.0 * std::numbers::pi / k;
    return std::cos(theta) - std::sin(theta);
}

inline BoundsReport compute_bounds(int k, std::optional<double> lambda = std::nullopt,
                                   std::optional<double> r = std::nullopt,
                                   std::optional<double> epsilon = std::nullopt, double beta = 2.0) {
    const ConeScheme scheme(k);
    BoundsReport b;
    b.k = k;
    b.theta = scheme.theta();
    b.lambda = lambda;
    b.r = r;
    b.epsilon = epsilon;
    b.beta = beta;
    b.yy_max_degree = 2 * k;
    b.sink_max_degree = k * (k + 2);

    const double yao_den = 1.0 - 2.0 * std::sin(std::numbers::pi / k);
    if (k >= 7 && yao_den > 0.0) {
        b.yao_bound = 1.0 / yao_den;
        b.yao_sink_bound = *b.yao_bound * *b.yao_bound;
    }

    const double gap = cone_gap(k);
    if (lambda && *lambda > 0.0) {
        b.yy_civilized_conditions = k > 8 && gap > 1.0 / (*lambda + 1.0);
        if (b.yy_civilized_conditions) b.yy_civilized_bound = *lambda / ((*lambda + 1.0) * gap - 1.0);
    }

    if (r && *r > 1.0) {
        const double lam2 = 1.0 / (2.0 * *r * std::cos(b.theta));
        const double cos2 = std::cos(2.0 * b.theta);
        b.sparse_sink_lambda = lam2;
        b.sparse_sink_stated_condition = gap > lam2 / (lam2 + 1.0);
        b.sparse_sink_derived_condition = gap > 1.0 / (lam2 + 1.0);
        b.sparse_sink_conditions =
            k >= 8 && b.sparse_sink_stated_condition && b.sparse_sink_derived_condition && cos2 > 0.0;
        if (b.sparse_sink_conditions) b.sparse_sink_bound = (lam2 / cos2) / ((lam2 + 1.0) * gap - 1.0);
    }

    if (lambda && epsilon && *lambda > 0.0 && *epsilon > 0.0) {
        const double target = (*lambda + *epsilon + 1.0) / ((*lambda + 1.0) * (*epsilon + 1.0));
        b.epsilon_target = target;
        // The gap increases toward 1 with k and target < 1, so this terminates.
        int kk = 9;
        while (cone_gap(kk) < target) ++kk;
        b.epsilon_k = kk;
        b.epsilon_length_bound = 1.0 + *epsilon;
        b.epsilon_power_bound = std::pow(1.0 + *epsilon, beta);
    }
    return b;
}

}  // namespace udgspan
