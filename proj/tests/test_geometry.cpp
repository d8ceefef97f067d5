#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_helpers.hpp"

using namespace udgspan;
using testutil::points;

TEST(UnitDiskGraph, EdgeWithinRadius) {
    UnitDiskGraph g(points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.5, 0}}}), 1.0);
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edges()[0], (UndirectedEdge{0, 1}));
}

TEST(UnitDiskGraph, NoEdgeBeyondRadius) {
    UnitDiskGraph g(points({{NodeId{0}, {0, 0}}, {NodeId{1}, {1.5, 0}}}), 1.0);
    EXPECT_TRUE(g.edges().empty());
    EXPECT_FALSE(g.connected());
}

TEST(UnitDiskGraph, BoundaryDistanceIsAnEdge) {
    UnitDiskGraph g(points({{NodeId{0}, {0, 0}}, {NodeId{1}, {1.0, 0}}}), 1.0);
    EXPECT_EQ(g.edges().size(), 1u);
}

TEST(UnitDiskGraph, TwoRowFamilyHasNoDiagonals) {
    const std::size_t s = 5;
    UnitDiskGraph g(gen_figure6(s), 1.0);
    // each row is a clique (row length 1), plus the verticals
    EXPECT_EQ(g.edges().size(), s * (s - 1) + s);
    for (auto e : g.edges()) {
        const auto a = g.points().pos(e.a), b = g.points().pos(e.b);
        EXPECT_TRUE(a.y == b.y || a.x == b.x) << e.a << "-" << e.b;
    }
}

TEST(UnitDiskGraph, AdjacencySymmetric) {
    const auto pts = gen_uniform(40, 2.5, 3);
    UnitDiskGraph g(pts, 1.0);
    for (NodeIndex u = 0; u < g.size(); ++u)
        for (NodeIndex v = 0; v < g.size(); ++v) EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
}

TEST(PointSet, RejectsDuplicates) {
    EXPECT_THROW(points({{NodeId{1}, {0, 0}}, {NodeId{1}, {1, 0}}}), std::invalid_argument);
    EXPECT_THROW(points({{NodeId{1}, {0, 0}}, {NodeId{2}, {0, 0}}}), std::invalid_argument);
    EXPECT_THROW(points({{NodeId{1}, {std::nan(""), 0}}}), std::invalid_argument);
}

TEST(PointSet, IndexOf) {
    auto p = points({{NodeId{7}, {0, 0}}, {NodeId{3}, {1, 0}}});
    EXPECT_EQ(p->index_of(NodeId{3}), 1u);
    EXPECT_THROW(p->index_of(NodeId{4}), std::out_of_range);
}

TEST(EdgeKey, ShorterFirst) {
    auto p = points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.4, 0}}, {NodeId{2}, {0, 0.5}}});
    EXPECT_TRUE(compare_edge_ids(*p, {0, 1}, {0, 2}) < 0);
}

TEST(EdgeKey, EqualLengthSourceIdBreaksTie) {
    auto p = points({{NodeId{2}, {0, 0}}, {NodeId{7}, {5, 0}}, {NodeId{9}, {0.5, 0}}, {NodeId{4}, {5.5, 0}}});
    EXPECT_TRUE(compare_edge_ids(*p, {0, 2}, {1, 3}) < 0);
    EXPECT_TRUE(compare_edge_ids(*p, {1, 3}, {0, 2}) > 0);
}

TEST(EdgeKey, Reflexive) {
    auto p = points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.4, 0}}});
    EXPECT_TRUE(compare_edge_ids(*p, {0, 1}, {0, 1}) == 0);
}

TEST(EdgeKey, UndirectedUsesSmallerId) {
    auto p = points({{NodeId{5}, {0, 0}}, {NodeId{3}, {0.4, 0}}});
    const auto k = undirected_edge_id(*p, 0, 1);
    EXPECT_EQ(k.src, NodeId{3});
    EXPECT_EQ(k.dst, NodeId{5});
    EXPECT_EQ(undirected_edge_id(*p, 0, 1), undirected_edge_id(*p, 1, 0));
    EXPECT_THROW(undirected_edge_id(*p, 0, 0), std::invalid_argument);
}

TEST(EdgeKey, AllUndirectedKeysDistinct) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Node> nodes;
    for (std::uint64_t i = 0; i < 30; ++i) nodes.push_back({NodeId{i}, {u(rng), u(rng)}});
    auto p = make_point_set(nodes);
    std::set<EdgeKey> keys;
    for (NodeIndex a = 0; a < 30; ++a)
        for (NodeIndex b = a + 1; b < 30; ++b) keys.insert(undirected_edge_id(*p, a, b));
    EXPECT_EQ(keys.size(), 30u * 29u / 2u);
}

TEST(EdgeKey, DirectedOrderHasNoTies) {
    // Lattice points give many equal lengths.
    std::vector<Node> nodes;
    std::uint64_t id = 0;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) nodes.push_back({NodeId{id++}, {0.25 * x, 0.25 * y}});
    auto p = make_point_set(nodes);
    std::vector<DirectedEdge> all;
    for (NodeIndex a = 0; a < p->size(); ++a)
        for (NodeIndex b = 0; b < p->size(); ++b)
            if (a != b) all.push_back({a, b});
    std::sort(all.begin(), all.end(),
              [&](DirectedEdge a, DirectedEdge b) { return compare_edge_ids(*p, a, b) < 0; });
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_TRUE(compare_edge_ids(*p, all[i - 1], all[i]) < 0);
}

// Independent cone oracle in degrees.
static int cone_oracle(int k, Point apex, Point t) {
    double deg = std::atan2(t.y - apex.y, t.x - apex.x) * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 360.0;
    const double width = 360.0 / k;
    int c = 0;
    while (c + 1 < k && deg >= (c + 1) * width) ++c;
    return c;
}

TEST(ConeScheme, Examples) {
    ConeScheme s(8);
    EXPECT_EQ(s.cone_index({0, 0}, {1, 0}), 0);
    EXPECT_EQ(s.cone_index({0, 0}, {0, -1}), 6);
    EXPECT_EQ(s.cone_index({0, 0}, {0.308, 0.846}), 1);
    EXPECT_EQ(s.cone_index({0, 0}, {0, 1}), 2);
    EXPECT_EQ(s.cone_index({0, 0}, {-1, 0}), 4);
}

TEST(ConeScheme, RejectsBadInput) {
    EXPECT_THROW(ConeScheme(2), std::invalid_argument);
    EXPECT_THROW(ConeScheme(8).cone_index({1, 1}, {1, 1}), std::invalid_argument);
}

TEST(ConeScheme, MatchesOracleAwayFromBoundaries) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k : {6, 7, 8, 9, 12, 24, 32}) {
        ConeScheme s(k);
        for (int i = 0; i < 2000; ++i) {
            Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
            if (a == b) continue;
            EXPECT_EQ(s.cone_index(a, b), cone_oracle(k, a, b));
        }
    }
}

TEST(ConeScheme, RotationByThetaShiftsCone) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    for (int k : {6, 8, 16}) {
        ConeScheme s(k);
        for (int i = 0; i < 500; ++i) {
            double a = ang(rng);
            // stay away from boundaries
            const double frac = std::fmod(a / s.theta(), 1.0);
            if (frac < 1e-6 || frac > 1 - 1e-6) continue;
            const int c0 = s.cone_index({0, 0}, {std::cos(a), std::sin(a)});
            const double b = a + s.theta();
            const int c1 = s.cone_index({0, 0}, {std::cos(b), std::sin(b)});
            EXPECT_EQ(c1, (c0 + 1) % k);
        }
    }
}

TEST(AspectRatio, Examples) {
    std::vector<double> equal{0.5, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(aspect_ratio(equal), 1.0);
    std::vector<double> two{0.2, 0.9};
    EXPECT_NEAR(aspect_ratio(two), 4.5, 1e-12);
    std::vector<double> none;
    EXPECT_THROW(aspect_ratio(none), std::invalid_argument);
}

TEST(AspectRatio, CivilizedBound) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double lambda = 0.4;
        UnitDiskGraph g(gen_civilized(40, lambda, seed), 1.0);
        EXPECT_LE(aspect_ratio(g.points(), g.edges()), 1.0 / lambda + 1e-12);
    }
}

TEST(Civilized, BoundaryInclusive) {
    auto p = points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.3, 0}}});
    EXPECT_TRUE(is_civilized(*p, 0.3));
    auto q = points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.29, 0}}});
    EXPECT_FALSE(is_civilized(*q, 0.3));
    EXPECT_THROW(is_civilized(*p, 0.0), std::invalid_argument);
}

TEST(DirectedTopology, CanonicalOrderAndDedup) {
    auto p = points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.5, 0}}, {NodeId{2}, {0, 0.3}}});
    DirectedTopology t(p, ConeScheme(8), 1.0, {{0, 1}, {2, 0}, {0, 1}, {1, 0}});
    ASSERT_EQ(t.edges().size(), 3u);
    EXPECT_EQ(t.edges()[0], (DirectedEdge{2, 0}));
    EXPECT_TRUE(t.contains({1, 0}));
    EXPECT_FALSE(t.contains({0, 2}));
    EXPECT_EQ(t.undirected_edges().size(), 2u);
    EXPECT_THROW(DirectedTopology(p, ConeScheme(8), 1.0, {{0, 0}}), std::invalid_argument);
}
