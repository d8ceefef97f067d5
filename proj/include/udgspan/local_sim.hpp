#pragma once

// One-round local computation: every node learns the ids and coordinates
// of its UDG neighbors, runs the whole construction on that closed
// neighborhood, and keeps the edges incident to itself.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <vector>

#include "geometry.hpp"
#include "topology.hpp"

namespace udgspan {

/// Closed 1-hop neighborhood of `owner`, in increasing global position.
struct NodeView {
    NodeIndex owner = 0;
    std::vector<NodeIndex> members;

    PointSetPtr local_points(const PointSet& global) const {
        std::vector<Node> nodes;
        nodes.reserve(members.size());
        for (NodeIndex m : members) nodes.push_back(global[m]);
        return make_point_set(std::move(nodes));
    }
};

inline NodeView node_view(const UnitDiskGraph& g, NodeIndex owner) {
    NodeView view{owner, {owner}};
    for (NodeIndex v : g.neighbors(owner)) view.members.push_back(v);
    std::sort(view.members.begin(), view.members.end());
    return view;
}

/// Bytes per broadcast record: 64-bit id plus two doubles.
inline constexpr std::size_t kRecordBytes = 24;

struct Discrepancy {
    NodeIndex node = 0;
    DirectedEdge edge;
    bool present_locally = false;
    bool present_centrally = false;

    friend auto operator<=>(const Discrepancy&, const Discrepancy&) = default;
};

struct LocalRunReport {
    Structure structure = Structure::Y;
    std::size_t n = 0;
    int k = 0;
    std::optional<double> r;
    std::size_t messages = 0;
    std::size_t bytes = 0;
    /// incident[u]: directed edges touching u that u's local run produced.
    std::vector<std::vector<DirectedEdge>> incident;
    /// Differences between the adopted edge set and the centralized output.
    std::vector<Discrepancy> discrepancies;
    /// Edges on which the two endpoints' local runs disagree. An edge kept
    /// by only one endpoint is still adopted, so these are informational.
    std::size_t endpoint_disagreements = 0;

    /// Edges kept by at least one endpoint: the topology the network runs.
    std::vector<DirectedEdge> adopted_edges() const {
        std::set<DirectedEdge> all;
        for (const auto& edges : incident) all.insert(edges.begin(), edges.end());
        return {all.begin(), all.end()};
    }

    bool adopted_by(NodeIndex u, DirectedEdge e) const {
        return u < incident.size() && std::find(incident[u].begin(), incident[u].end(), e) != incident[u].end();
    }
};

/// Set difference in both directions between the adopted edges and the
/// centralized output, sorted by EdgeKey. A spurious edge is attributed to
/// the endpoint(s) that adopted it; a missing edge to its source.
inline std::vector<Discrepancy> compare_local_centralized(const LocalRunReport& report,
                                                          const DirectedTopology& central) {
    const auto& pts = central.points();
    const auto adopted = report.adopted_edges();
    const std::set<DirectedEdge> local(adopted.begin(), adopted.end());
    const std::set<DirectedEdge> expected(central.edges().begin(), central.edges().end());

    std::vector<Discrepancy> out;
    for (auto e : local) {
        if (expected.count(e)) continue;
        for (NodeIndex end : {e.src, e.dst})
            if (report.adopted_by(end, e)) out.push_back({end, e, true, false});
    }
    for (auto e : expected)
        if (!local.count(e)) out.push_back({e.src, e, false, true});
    std::stable_sort(out.begin(), out.end(), [&](const Discrepancy& a, const Discrepancy& b) {
        return compare_edge_ids(pts, a.edge, b.edge) < 0;
    });
    return out;
}

inline LocalRunReport run_local(const UnitDiskGraph& g, Structure structure, int k,
                                std::optional<double> r = std::nullopt) {
    const auto& pts = g.points();
    LocalRunReport report;
    report.structure = structure;
    report.n = pts.size();
    report.k = k;
    report.r = needs_ratio(structure) ? r : std::nullopt;
    report.messages = pts.size();
    report.incident.resize(pts.size());

    for (NodeIndex u = 0; u < pts.size(); ++u) {
        const NodeView view = node_view(g, u);
        report.bytes += kRecordBytes * (view.members.size() - 1);
        const UnitDiskGraph local(view.local_points(pts), g.radius());
        const auto out = build(structure, local, k, r);
        for (auto e : out.edges()) {
            const NodeIndex src = view.members[e.src];
            const NodeIndex dst = view.members[e.dst];
            if (src == u || dst == u) report.incident[u].push_back({src, dst});
        }
        canonicalize(pts, report.incident[u]);
    }
    for (auto e : report.adopted_edges())
        if (report.adopted_by(e.src, e) != report.adopted_by(e.dst, e)) ++report.endpoint_disagreements;
    report.discrepancies = compare_local_centralized(report, build(structure, g, k, r));
    return report;
}

struct CliqueCheck {
    bool holds = true;
    /// apex, then two neighbors in one cone of the apex that are not adjacent.
    std::optional<std::array<NodeIndex, 3>> counterexample;
};

/// Checks that, for every node and cone, the node's UDG neighbors inside
/// that cone are pairwise adjacent.
inline CliqueCheck check_clique_property(const UnitDiskGraph& g, int k) {
    const ConeScheme scheme(k);
    const auto& pts = g.points();
    for (NodeIndex u = 0; u < pts.size(); ++u) {
        std::vector<std::vector<NodeIndex>> by_cone(static_cast<std::size_t>(k));
        for (NodeIndex v : g.neighbors(u))
            by_cone[static_cast<std::size_t>(scheme.cone_index(pts.pos(u), pts.pos(v)))].push_back(v);
        for (const auto& group : by_cone)
            for (std::size_t i = 0; i < group.size(); ++i)
                for (std::size_t j = i + 1; j < group.size(); ++j)
                    if (!g.adjacent(group[i], group[j])) return {false, std::array{u, group[i], group[j]}};
    }
    return {};
}

}  // namespace udgspan
