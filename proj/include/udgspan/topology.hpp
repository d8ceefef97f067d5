#pragma once

// Cone-based topology construction over a unit disk graph: the Yao step,
// the reverse Yao step, the sink-tree step and the sparse length filter,
// their compositions, and certification of the cone paths left behind by
// the sink step.

#include <cmath>
#include <cctype>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace udgspan {

enum class Structure { Y, YY, YS, YE, YES };

inline constexpr Structure kAllStructures[] = {Structure::Y, Structure::YY, Structure::YS,
                                               Structure::YE, Structure::YES};

inline std::string_view to_string(Structure s) {
    switch (s) {
        case Structure::Y: return "y";
        case Structure::YY: return "yy";
        case Structure::YS: return "ys";
        case Structure::YE: return "ye";
        case Structure::YES: return "yes";
    }
    return "?";
}

inline Structure parse_structure(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto s : kAllStructures)
        if (to_string(s) == lower) return s;
    throw std::invalid_argument("unknown structure '" + std::string(name) + "'");
}

inline bool needs_ratio(Structure s) { return s == Structure::YE || s == Structure::YES; }
inline bool uses_sink_step(Structure s) { return s == Structure::YS || s == Structure::YES; }

/// Smallest cone count for which every cone spans at most pi/3, so the
/// UDG neighbors of a node inside one cone are pairwise adjacent.
inline constexpr int kMinSinkCones = 6;

namespace detail {

inline void require_scheme(const DirectedTopology& t, int k, std::string_view op) {
    if (t.scheme().k() != k)
        throw std::invalid_argument(std::string(op) + ": cone scheme mismatch (input built with k=" +
                                    std::to_string(t.scheme().k()) + ", requested k=" +
                                    std::to_string(k) + ")");
}

// Incoming edges grouped by (sink, cone at sink containing the source).
using InGroups = std::map<std::pair<NodeIndex, int>, std::vector<DirectedEdge>>;

inline InGroups group_incoming(const DirectedTopology& t) {
    InGroups groups;
    const auto& pts = t.points();
    for (auto e : t.edges()) {
        int cone = t.scheme().cone_index(pts.pos(e.dst), pts.pos(e.src));
        groups[{e.dst, cone}].push_back(e);
    }
    // edges() is EdgeKey-sorted, so each group is too.
    return groups;
}

}  // namespace detail

/// For every node and every nonempty cone keep the outgoing UDG edge of
/// minimum EdgeKey.
inline DirectedTopology yao_step(const UnitDiskGraph& g, int k) {
    const ConeScheme scheme(k);
    const auto& pts = g.points();
    std::vector<DirectedEdge> out;
    std::vector<std::optional<NodeIndex>> best(static_cast<std::size_t>(k));
    for (NodeIndex u = 0; u < pts.size(); ++u) {
        std::fill(best.begin(), best.end(), std::nullopt);
        for (NodeIndex v : g.neighbors(u)) {
            auto& slot = best[static_cast<std::size_t>(scheme.cone_index(pts.pos(u), pts.pos(v)))];
            if (!slot || compare_edge_ids(pts, {u, v}, {u, *slot}) < 0) slot = v;
        }
        for (auto& slot : best)
            if (slot) out.push_back({u, *slot});
    }
    return DirectedTopology(g.points_ptr(), scheme, g.radius(), std::move(out));
}

/// For every node v and cone K_v keep only the minimum-EdgeKey edge
/// directed into v from K_v.
inline DirectedTopology reverse_yao_step(const DirectedTopology& y, int k) {
    detail::require_scheme(y, k, "reverse_yao_step");
    std::vector<DirectedEdge> out;
    for (auto& [key, edges] : detail::group_incoming(y)) out.push_back(edges.front());
    return DirectedTopology(y.points_ptr(), y.scheme(), y.radius(), std::move(out));
}

/// Tree built by the sink step for one (sink, cone) pair. Edges point from
/// child to parent. `membership` records I(w) for every tree vertex as it
/// was set when w was attached (I(sink) is the initial in-set).
struct SinkTree {
    NodeIndex sink = 0;
    int cone = 0;
    std::vector<DirectedEdge> edges;
    std::vector<std::pair<NodeIndex, std::vector<NodeIndex>>> membership;

    std::optional<NodeIndex> parent_of(NodeIndex w) const {
        for (auto e : edges)
            if (e.src == w) return e.dst;
        return std::nullopt;
    }
};

struct SinkStepResult {
    DirectedTopology topology;
    std::vector<SinkTree> trees;

    /// Tree for (sink, cone), if that cone had incoming edges.
    const SinkTree* find_tree(NodeIndex sink, int cone) const {
        for (const auto& t : trees)
            if (t.sink == sink && t.cone == cone) return &t;
        return nullptr;
    }
};

/// Replaces each star of edges entering a node through one cone by a tree
/// rooted at that node. J is processed FIFO and the cones of each processed
/// vertex in increasing index. A vertex, once attached, is removed from
/// every pending membership set, so each vertex gets exactly one parent.
inline SinkStepResult sink_step(const DirectedTopology& h, int k) {
    detail::require_scheme(h, k, "sink_step");
    if (k < kMinSinkCones)
        throw std::invalid_argument("sink_step requires k >= 6 so that tree edges stay inside the UDG");
    const auto& pts = h.points();
    const auto& scheme = h.scheme();
    const auto cones = static_cast<std::size_t>(k);

    std::vector<DirectedEdge> out;
    std::vector<SinkTree> trees;
    std::vector<char> pending(pts.size(), 0);

    for (auto& [key, incoming] : detail::group_incoming(h)) {
        SinkTree tree;
        tree.sink = key.first;
        tree.cone = key.second;

        std::vector<NodeIndex> initial;
        for (auto e : incoming) {
            initial.push_back(e.src);
            pending[e.src] = 1;
        }
        std::size_t remaining = initial.size();

        std::map<NodeIndex, std::vector<NodeIndex>> members;
        members[tree.sink] = initial;
        tree.membership.emplace_back(tree.sink, initial);
        std::deque<NodeIndex> queue{tree.sink};

        while (remaining > 0) {
            if (queue.empty()) throw std::logic_error("sink_step: queue drained with vertices left");
            const NodeIndex u = queue.front();
            queue.pop_front();

            std::vector<std::vector<NodeIndex>> by_cone(cones);
            for (NodeIndex x : members[u])
                if (pending[x])
                    by_cone[static_cast<std::size_t>(scheme.cone_index(pts.pos(u), pts.pos(x)))].push_back(x);

            for (auto& group : by_cone) {
                if (group.empty()) continue;
                NodeIndex w = group.front();
                for (NodeIndex x : group)
                    if (compare_edge_ids(pts, {x, u}, {w, u}) < 0) w = x;
                tree.edges.push_back({w, u});
                pending[w] = 0;
                --remaining;
                queue.push_back(w);
                std::vector<NodeIndex> inherited;
                for (NodeIndex x : group)
                    if (x != w) inherited.push_back(x);
                tree.membership.emplace_back(w, inherited);
                members[w] = std::move(inherited);
            }
        }
        out.insert(out.end(), tree.edges.begin(), tree.edges.end());
        trees.push_back(std::move(tree));
    }
    return {DirectedTopology(h.points_ptr(), scheme, h.radius(), std::move(out)), std::move(trees)};
}

struct Bucket {
    int index = 0;
    std::vector<DirectedEdge> edges;
    DirectedEdge kept;
};

/// Length buckets of the incoming Yao edges of one (sink, cone) pair.
struct BucketPartition {
    NodeIndex sink = 0;
    int cone = 0;
    DirectedEdge min_edge;
    double aspect = 1.0;
    int bucket_count = 1;
    std::vector<Bucket> buckets;
};

struct SparseFilterResult {
    DirectedTopology topology;
    std::vector<BucketPartition> partitions;
};

namespace detail {

// Largest integer i with r^i <= x, for x >= 1.
inline int floor_log(double x, double r) {
    int i = static_cast<int>(std::floor(std::log(x) / std::log(r)));
    while (std::pow(r, i + 1) <= x) ++i;
    while (i > 0 && std::pow(r, i) > x) --i;
    return i;
}

// Smallest integer s with r^s >= x, for x >= 1.
inline int ceil_log(double x, double r) {
    int s = static_cast<int>(std::ceil(std::log(x) / std::log(r)));
    while (s > 0 && std::pow(r, s - 1) >= x) --s;
    while (std::pow(r, s) < x) ++s;
    return s;
}

}  // namespace detail

/// Bucket index of an edge of length `len` relative to the reference
/// length: floor(log_r(len/ref)) + 1, clamped to [1, bucket_count].
inline int bucket_index(double len, double ref, double r, int bucket_count) {
    const double ratio = std::max(1.0, len / ref);
    return std::min(detail::floor_log(ratio, r) + 1, bucket_count);
}

/// Per (sink, cone), partition the incoming Yao edges into length classes
/// of ratio r and keep the minimum-EdgeKey edge of each class.
inline SparseFilterResult sparse_filter(const DirectedTopology& y, int k, double r) {
    detail::require_scheme(y, k, "sparse_filter");
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("sparse_filter: r must exceed 1");
    const auto& pts = y.points();

    std::vector<DirectedEdge> out;
    std::vector<BucketPartition> partitions;
    for (auto& [key, incoming] : detail::group_incoming(y)) {
        BucketPartition part;
        part.sink = key.first;
        part.cone = key.second;
        part.min_edge = incoming.front();
        const double ref = pts.distance(part.min_edge.src, part.min_edge.dst);
        double longest = ref;
        for (auto e : incoming) {
            const double len = pts.distance(e.src, e.dst);
            if (len < ref) throw std::logic_error("sparse_filter: minimum-ID edge is not a shortest edge");
            longest = std::max(longest, len);
        }
        part.aspect = longest / ref;
        part.bucket_count = std::max(1, detail::ceil_log(part.aspect, r));

        std::map<int, std::vector<DirectedEdge>> classes;
        for (auto e : incoming)
            classes[bucket_index(pts.distance(e.src, e.dst), ref, r, part.bucket_count)].push_back(e);
        for (auto& [index, edges] : classes) {
            // incoming is EdgeKey-sorted, so front() is the class minimum.
            part.buckets.push_back({index, edges, edges.front()});
            out.push_back(edges.front());
        }
        partitions.push_back(std::move(part));
    }
    return {DirectedTopology(y.points_ptr(), y.scheme(), y.radius(), std::move(out)),
            std::move(partitions)};
}

/// Every intermediate stage of one construction.
struct Pipeline {
    Structure structure = Structure::Y;
    std::optional<double> r;
    DirectedTopology yao;
    std::optional<SparseFilterResult> filtered;
    std::optional<DirectedTopology> reversed;
    std::optional<SinkStepResult> sink;

    /// Input to the sink step (Y for YS, YE for YES).
    const DirectedTopology* sink_input() const {
        if (!sink) return nullptr;
        return filtered ? &filtered->topology : &yao;
    }

    const DirectedTopology& output() const {
        if (sink) return sink->topology;
        if (reversed) return *reversed;
        if (filtered) return filtered->topology;
        return yao;
    }
};

inline Pipeline build_pipeline(Structure structure, const UnitDiskGraph& g, int k,
                               std::optional<double> r = std::nullopt) {
    if (needs_ratio(structure)) {
        if (!r) throw std::invalid_argument("structure " + std::string(to_string(structure)) +
                                            " requires the ratio parameter r");
        if (!(*r > 1.0)) throw std::invalid_argument("r must exceed 1");
    } else {
        r.reset();
    }
    Pipeline p{structure, r, yao_step(g, k), std::nullopt, std::nullopt, std::nullopt};
    switch (structure) {
        case Structure::Y: break;
        case Structure::YY: p.reversed = reverse_yao_step(p.yao, k); break;
        case Structure::YS: p.sink = sink_step(p.yao, k); break;
        case Structure::YE: p.filtered = sparse_filter(p.yao, k, *r); break;
        case Structure::YES:
            p.filtered = sparse_filter(p.yao, k, *r);
            p.sink = sink_step(p.filtered->topology, k);
            break;
    }
    return p;
}

inline DirectedTopology build(Structure structure, const UnitDiskGraph& g, int k,
                              std::optional<double> r = std::nullopt) {
    return build_pipeline(structure, g, k, r).output();
}

/// Path from v back to u through the sink tree of (v, K_v(u)), plus the
/// the reach and prefix-length quantities checked against it.
struct ConePathCertificate {
    DirectedEdge edge;
    std::vector<NodeIndex> path;  // w_0 = v, ..., w_h = u
    std::size_t ell = 0;
    double prefix_length = 0.0;    // sum of |w_i w_{i+1}| for i < ell
    double reach = 0.0;            // |v w_ell|
    double reach_threshold = 0.0;  // |uv| / (2 cos theta)
    double prefix_bound = 0.0;     // |v w_ell| / cos 2theta, +inf when cos 2theta <= 0
};

struct CertificationResult {
    std::optional<ConePathCertificate> certificate;
    std::vector<std::string> violations;

    bool ok() const { return certificate.has_value() && violations.empty(); }
};

/// Walks the sink tree of (v, K_v(u)) from v toward u, choosing at each
/// vertex the child lying in the cone that contains u, and checks the
/// cone, ID-decrease, reach and prefix-length conditions along the way.
/// Failures are reported in `violations`, never thrown.
inline CertificationResult certify_cone_path(DirectedEdge edge, const DirectedTopology& sink_input,
                                             const SinkStepResult& sink) {
    CertificationResult result;
    const auto& pts = sink_input.points();
    const auto& scheme = sink_input.scheme();
    const NodeIndex u = edge.src;
    const NodeIndex v = edge.dst;
    auto describe = [&](NodeIndex x) { return std::to_string(pts.id(x).value); };
    const std::string tag = "edge " + describe(u) + "->" + describe(v) + ": ";

    if (!sink_input.contains(edge)) {
        result.violations.push_back(tag + "not an input edge of the sink step");
        return result;
    }
    const int cone = scheme.cone_index(pts.pos(v), pts.pos(u));
    const SinkTree* tree = sink.find_tree(v, cone);
    if (!tree) {
        result.violations.push_back(tag + "no sink tree for its cone");
        return result;
    }

    ConePathCertificate cert;
    cert.edge = edge;
    cert.path.push_back(v);
    NodeIndex current = v;
    while (current != u) {
        if (cert.path.size() > tree->edges.size() + 1) {
            result.violations.push_back(tag + "walk did not terminate");
            return result;
        }
        const int toward = scheme.cone_index(pts.pos(current), pts.pos(u));
        std::optional<NodeIndex> next;
        for (auto e : tree->edges) {
            if (e.dst != current) continue;
            if (e.src == u) {
                next = u;
                break;
            }
            if (scheme.cone_index(pts.pos(current), pts.pos(e.src)) == toward) next = e.src;
        }
        if (!next) {
            result.violations.push_back(tag + "path breaks at node " + describe(current));
            return result;
        }
        const DirectedEdge step{*next, current};
        if (!sink.topology.contains(step))
            result.violations.push_back(tag + "step " + describe(*next) + "->" + describe(current) +
                                        " missing from sink output");
        const auto order = compare_edge_ids(pts, step, {u, current});
        if (*next == u ? order != 0 : order >= 0)
            result.violations.push_back(tag + "ID does not decrease at " + describe(*next));
        if (scheme.cone_index(pts.pos(v), pts.pos(*next)) != cone)
            result.violations.push_back(tag + "node " + describe(*next) + " leaves the cone at the sink");
        cert.path.push_back(*next);
        current = *next;
    }

    const double theta = scheme.theta();
    const double uv = pts.distance(u, v);
    cert.reach_threshold = uv / (2.0 * std::cos(theta));
    for (std::size_t i = 1; i < cert.path.size(); ++i) {
        if (pts.distance(v, cert.path[i]) >= cert.reach_threshold) {
            cert.ell = i;
            break;
        }
    }
    if (cert.ell == 0) {
        result.violations.push_back(tag + "no path vertex reaches |uv|/(2cos theta)");
        cert.ell = cert.path.size() - 1;
    }
    for (std::size_t i = 0; i < cert.ell; ++i) cert.prefix_length += pts.distance(cert.path[i], cert.path[i + 1]);
    cert.reach = pts.distance(v, cert.path[cert.ell]);
    const double cos2 = std::cos(2.0 * theta);
    cert.prefix_bound = cos2 > 0.0 ? cert.reach / cos2 : std::numeric_limits<double>::infinity();
    if (cert.prefix_length > cert.prefix_bound)
        result.violations.push_back(tag + "prefix length exceeds |v w_l|/cos 2theta");
    result.certificate = std::move(cert);
    return result;
}

/// Certifies every input edge of the pipeline's sink step.
inline std::vector<CertificationResult> certify_all(const Pipeline& p) {
    std::vector<CertificationResult> out;
    const auto* input = p.sink_input();
    if (!input) return out;
    for (auto e : input->edges()) out.push_back(certify_cone_path(e, *input, *p.sink));
    return out;
}

}  // namespace udgspan
