#pragma once

// Brute-force structural checks of constructed topologies. Each returns a
// list of human-readable violations; empty means the property holds.
// They re-derive expectations from the point set directly rather than
// reusing the construction code paths.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "metrics.hpp"
#include "topology.hpp"

namespace udgspan {

using Violations = std::vector<std::string>;

namespace detail {

inline std::string edge_name(const PointSet& pts, DirectedEdge e) {
    return std::to_string(pts.id(e.src).value) + "->" + std::to_string(pts.id(e.dst).value);
}

}  // namespace detail

/// Out-edges of every node are exactly the EdgeKey minima of its nonempty
/// cones, found by scanning all points within the radius.
inline Violations check_yao_minimality(const PointSet& pts, double radius, const DirectedTopology& y) {
    Violations out;
    const auto& scheme = y.scheme();
    std::set<DirectedEdge> expected;
    for (NodeIndex u = 0; u < pts.size(); ++u) {
        std::map<int, DirectedEdge> best;
        for (NodeIndex v = 0; v < pts.size(); ++v) {
            if (u == v || pts.squared_distance(u, v) > radius * radius) continue;
            const int c = scheme.cone_index(pts.pos(u), pts.pos(v));
            auto it = best.find(c);
            if (it == best.end() || edge_key(pts, {u, v}) < edge_key(pts, it->second)) best[c] = {u, v};
        }
        for (auto& [c, e] : best) expected.insert(e);
    }
    const std::set<DirectedEdge> actual(y.edges().begin(), y.edges().end());
    for (auto e : expected)
        if (!actual.count(e)) out.push_back("yao edge " + detail::edge_name(pts, e) + " missing");
    for (auto e : actual)
        if (!expected.count(e)) out.push_back("edge " + detail::edge_name(pts, e) + " is not a cone minimum");
    return out;
}

/// `kept` holds, per (sink, cone at sink), exactly the minimum-EdgeKey edge
/// of `from` entering the sink through that cone.
inline Violations check_reverse_minimality(const DirectedTopology& from, const DirectedTopology& kept) {
    Violations out;
    const auto& pts = from.points();
    std::map<std::pair<NodeIndex, int>, DirectedEdge> best;
    for (auto e : from.edges()) {
        const int c = from.scheme().cone_index(pts.pos(e.dst), pts.pos(e.src));
        auto it = best.find({e.dst, c});
        if (it == best.end() || edge_key(pts, e) < edge_key(pts, it->second)) best[{e.dst, c}] = e;
    }
    std::set<DirectedEdge> expected;
    for (auto& [key, e] : best) expected.insert(e);
    const std::set<DirectedEdge> actual(kept.edges().begin(), kept.edges().end());
    if (expected != actual) {
        for (auto e : expected)
            if (!actual.count(e)) out.push_back("incoming minimum " + detail::edge_name(pts, e) + " dropped");
        for (auto e : actual)
            if (!expected.count(e)) out.push_back("edge " + detail::edge_name(pts, e) + " is not an incoming minimum");
    }
    return out;
}

inline Violations check_subset(const DirectedTopology& sub, const DirectedTopology& super, std::string_view what) {
    Violations out;
    for (auto e : sub.edges())
        if (!super.contains(e))
            out.push_back(std::string(what) + ": edge " + detail::edge_name(sub.points(), e) + " not in superset");
    return out;
}

inline Violations check_max_degree(const DirectedTopology& t, std::size_t bound, std::string_view what) {
    const auto stats = degree_stats(t);
    if (stats.max_degree <= bound) return {};
    return {std::string(what) + ": max degree " + std::to_string(stats.max_degree) + " exceeds " +
            std::to_string(bound)};
}

inline Violations check_out_degree(const DirectedTopology& t, std::size_t bound) {
    std::vector<std::size_t> out_deg(t.points().size(), 0);
    for (auto e : t.edges()) ++out_deg[e.src];
    for (NodeIndex u = 0; u < out_deg.size(); ++u)
        if (out_deg[u] > bound)
            return {"node " + std::to_string(t.points().id(u).value) + " has out-degree " + std::to_string(out_deg[u])};
    return {};
}

/// Partition invariants of the sparse filter: buckets cover F disjointly,
/// bucket ranges follow the clamped index rule, each bucket keeps its
/// minimum, per-cone in-degree <= floor(log_r aspect) + 1, and every
/// discarded edge's bucket winner is at least 1/r of its length.
inline Violations check_sparse_filter(const DirectedTopology& yao, const SparseFilterResult& filtered, double r) {
    Violations out;
    const auto& pts = yao.points();
    std::map<std::pair<NodeIndex, int>, std::vector<DirectedEdge>> groups;
    for (auto e : yao.edges())
        groups[{e.dst, yao.scheme().cone_index(pts.pos(e.dst), pts.pos(e.src))}].push_back(e);

    if (groups.size() != filtered.partitions.size()) out.push_back("partition count differs from nonempty cone count");
    for (const auto& part : filtered.partitions) {
        const std::string where = "cone " + std::to_string(part.cone) + " of " + std::to_string(pts.id(part.sink).value);
        auto it = groups.find({part.sink, part.cone});
        if (it == groups.end()) {
            out.push_back(where + ": partition for an empty cone");
            continue;
        }
        const auto& f = it->second;
        double shortest = std::numeric_limits<double>::infinity(), longest = 0.0;
        DirectedEdge min_edge = f.front();
        for (auto e : f) {
            shortest = std::min(shortest, pts.distance(e.src, e.dst));
            longest = std::max(longest, pts.distance(e.src, e.dst));
            if (edge_key(pts, e) < edge_key(pts, min_edge)) min_edge = e;
        }
        if (part.min_edge != min_edge) out.push_back(where + ": wrong reference edge");
        if (pts.distance(min_edge.src, min_edge.dst) != shortest) out.push_back(where + ": reference edge not shortest");
        const double aspect = longest / shortest;

        std::size_t covered = 0;
        std::set<DirectedEdge> seen;
        for (const auto& b : part.buckets) {
            covered += b.edges.size();
            DirectedEdge best = b.edges.front();
            for (auto e : b.edges) {
                if (!seen.insert(e).second) out.push_back(where + ": edge in two buckets");
                if (edge_key(pts, e) < edge_key(pts, best)) best = e;
                const double len = pts.distance(e.src, e.dst);
                const double lo = shortest * std::pow(r, b.index - 1);
                const double hi = shortest * std::pow(r, b.index);
                const bool top = b.index == part.bucket_count;
                if (len < lo * (1 - 1e-12) || (!top && len >= hi * (1 + 1e-12)))
                    out.push_back(where + ": edge outside bucket " + std::to_string(b.index) + " range");
                if (len > r * pts.distance(b.kept.src, b.kept.dst) * (1 + 1e-12))
                    out.push_back(where + ": winner shorter than 1/r of discarded edge");
            }
            if (b.kept != best) out.push_back(where + ": bucket does not keep its minimum");
            if (!filtered.topology.contains(b.kept)) out.push_back(where + ": kept edge missing from output");
        }
        if (covered != f.size()) out.push_back(where + ": buckets do not cover F");

        const double levels = std::floor(std::log(aspect) / std::log(r) + 1e-12) + 1.0;
        if (static_cast<double>(part.buckets.size()) > levels)
            out.push_back(where + ": in-degree " + std::to_string(part.buckets.size()) + " exceeds floor(log_r D)+1");
    }
    return out;
}

/// Each sink tree spans I u {sink} with |I| edges, every vertex reaches the
/// sink, and each edge w->u picks the EdgeKey minimum of I(u) within the
/// cone of u that contains w.
inline Violations check_sink_trees(const DirectedTopology& input, const SinkStepResult& sink) {
    Violations out;
    const auto& pts = input.points();
    const auto& scheme = input.scheme();
    std::map<std::pair<NodeIndex, int>, std::set<NodeIndex>> in_sets;
    for (auto e : input.edges()) in_sets[{e.dst, scheme.cone_index(pts.pos(e.dst), pts.pos(e.src))}].insert(e.src);

    std::set<DirectedEdge> union_edges;
    for (const auto& tree : sink.trees) {
        const std::string where = "tree of " + std::to_string(pts.id(tree.sink).value) + " cone " + std::to_string(tree.cone);
        const auto& members = in_sets[{tree.sink, tree.cone}];
        if (tree.edges.size() != members.size()) out.push_back(where + ": edge count != |I|");
        std::map<NodeIndex, NodeIndex> parent;
        for (auto e : tree.edges) {
            union_edges.insert(e);
            if (!members.count(e.src)) out.push_back(where + ": child outside I");
            if (!parent.emplace(e.src, e.dst).second) out.push_back(where + ": vertex with two parents");
        }
        for (NodeIndex w : members) {
            NodeIndex cur = w;
            std::size_t steps = 0;
            while (cur != tree.sink && steps <= members.size()) {
                auto it = parent.find(cur);
                if (it == parent.end()) break;
                cur = it->second;
                ++steps;
            }
            if (cur != tree.sink) out.push_back(where + ": vertex " + std::to_string(pts.id(w).value) + " does not reach the sink");
        }
        std::map<NodeIndex, std::vector<NodeIndex>> membership(tree.membership.begin(), tree.membership.end());
        for (auto e : tree.edges) {
            const auto& candidates = membership[e.dst];
            const int c = scheme.cone_index(pts.pos(e.dst), pts.pos(e.src));
            for (NodeIndex x : candidates)
                if (scheme.cone_index(pts.pos(e.dst), pts.pos(x)) == c && edge_key(pts, {x, e.dst}) < edge_key(pts, e))
                    out.push_back(where + ": edge " + detail::edge_name(pts, e) + " is not the cone minimum of I(u)");
        }
    }
    const std::set<DirectedEdge> actual(sink.topology.edges().begin(), sink.topology.edges().end());
    if (union_edges != actual) out.push_back("sink output differs from the union of its trees");
    return out;
}

}  // namespace udgspan
