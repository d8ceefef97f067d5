#include <gtest/gtest.h>

#include "test_helpers.hpp"

using namespace udgspan;
using testutil::points;

namespace {

UnitDiskGraph single_edge() { return UnitDiskGraph(points({{NodeId{0}, {0, 0}}, {NodeId{1}, {0.7, 0}}}), 1.0); }

// Prim over the complete UDG, O(n^2).
double prim_oracle(const UnitDiskGraph& g) {
    const auto& p = g.points();
    const std::size_t n = p.size();
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in(n, 0);
    best[0] = 0;
    double sum = 0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (u == n || best[v] < best[u])) u = v;
        in[u] = 1;
        sum += best[u];
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && g.adjacent(u, v)) best[v] = std::min(best[v], p.distance(u, v));
    }
    return sum;
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

TEST(ShortestPaths, SingleEdge) {
    const auto g = single_edge();
    const auto len = shortest_paths(weighted(g.points(), g.edges(), WeightMode::length()));
    EXPECT_DOUBLE_EQ(len.at(0, 1), 0.7);
    const auto pw = shortest_paths(weighted(g.points(), g.edges(), WeightMode::power(2.0)));
    EXPECT_NEAR(pw.at(0, 1), 0.49, 1e-15);
}

TEST(ShortestPaths, ThreeNodeComplete) {
    const UnitDiskGraph g(testutil::three_node(), 1.0);
    const auto d = floyd_warshall(weighted(g.points(), g.edges(), WeightMode::length()));
    EXPECT_NEAR(d.at(2, 0), 0.95, 1e-12);
    // alternative through u1, law of cosines on the 15 degree wedge
    const double u1u2 = std::sqrt(0.81 + 0.9025 - 2 * 0.9 * 0.95 * std::cos(deg(15)));
    EXPECT_NEAR(0.9 + u1u2, 1.14652, 1e-4);
}

TEST(ShortestPaths, MethodsAgree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const UnitDiskGraph g(gen_uniform(70, 3.0, seed), 1.0);
        for (auto mode : {WeightMode::length(), WeightMode::power(3.0)}) {
            const auto w = weighted(g.points(), g.edges(), mode);
            const auto a = shortest_paths(w, ShortestPathMethod::matrix);
            const auto b = shortest_paths(w, ShortestPathMethod::per_source);
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(a.at(i, j), b.at(i, j), 1e-9);
        }
    }
}

TEST(Stretch, IdentitySubgraph) {
    const UnitDiskGraph g(gen_uniform(30, 2.0, 4), 1.0);
    EXPECT_DOUBLE_EQ(length_stretch(g, g.edges()).factor, 1.0);
    EXPECT_DOUBLE_EQ(power_stretch(g, g.edges(), 2.0).factor, 1.0);
}

TEST(Stretch, ThreeNodeYaoYao) {
    const UnitDiskGraph g(testutil::three_node(), 1.0);
    const auto yy = build(Structure::YY, g, 8);
    const auto len = length_stretch(g, yy);
    const double u1u2 = std::sqrt(0.81 + 0.9025 - 2 * 0.9 * 0.95 * std::cos(deg(15)));
    EXPECT_NEAR(len.factor, (0.9 + u1u2) / 0.95, 1e-12);
    EXPECT_NEAR(len.factor, 1.2069, 1e-3);
    ASSERT_TRUE(len.witness);
    EXPECT_EQ(*len.witness, (std::pair<NodeIndex, NodeIndex>{0, 2}));
    EXPECT_NEAR(power_stretch(g, yy, 2.0).factor, 1.0, 1e-12);
}

TEST(Stretch, TwoRowFamilyYaoIsExact) {
    const UnitDiskGraph g(gen_figure6(5), 1.0);
    EXPECT_NEAR(length_stretch(g, build(Structure::Y, g, 8)).factor, 1.0, 1e-12);
}

TEST(Stretch, PowerBoundedByLengthToBeta) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const UnitDiskGraph g(gen_uniform(50, 2.5, 40 + seed), 1.0);
        for (auto st : {Structure::Y, Structure::YY, Structure::YS}) {
            const auto h = build(st, g, 9);
            for (double beta : {2.0, 3.5, 5.0}) {
                const auto rep = stretch_report(g, h, beta);
                EXPECT_LE(rep.power_stretch, std::pow(rep.length_stretch, beta) + 1e-9);
            }
        }
    }
}

TEST(Stretch, BetaRange) {
    EXPECT_TRUE(beta_in_range(2.0));
    EXPECT_TRUE(beta_in_range(5.0));
    EXPECT_FALSE(beta_in_range(1.5));
    const UnitDiskGraph g(testutil::three_node(), 1.0);
    EXPECT_TRUE(stretch_report(g, build(Structure::Y, g, 8), 6.0).beta_warning);
}

TEST(Weight, SingleEdge) {
    const auto g = single_edge();
    EXPECT_DOUBLE_EQ(total_weight(build(Structure::Y, g, 8)), 0.7);
    EXPECT_DOUBLE_EQ(mst_weight(g), 0.7);
}

TEST(Weight, TwoRowFamily) {
    for (std::size_t s : {2u, 5u, 17u}) {
        const UnitDiskGraph g(gen_figure6(s), 1.0);
        EXPECT_NEAR(total_weight(build(Structure::Y, g, 8)), static_cast<double>(s) + 2.0, 1e-9);
        EXPECT_NEAR(mst_weight(g), 3.0, 1e-9);
    }
}

TEST(Weight, MstMatchesPrim) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const UnitDiskGraph g(gen_uniform(60, 3.0, seed), 1.0);
        EXPECT_NEAR(mst_weight(g), prim_oracle(g), 1e-9);
    }
    EXPECT_THROW(mst_weight(UnitDiskGraph(points({{NodeId{0}, {0, 0}}, {NodeId{1}, {3, 0}}}), 1.0)),
                 std::invalid_argument);
}

TEST(Degree, TwoNodes) {
    const auto g = single_edge();
    const auto s = degree_stats(build(Structure::YY, g, 8));
    EXPECT_EQ(s.max_degree, 1u);
    EXPECT_EQ(s.cone_out[0][0], 1u);
    EXPECT_EQ(s.cone_in[0][0], 1u);
    EXPECT_EQ(s.cone_in[1][4], 1u);
}

TEST(Bounds, YaoK8) {
    const auto b = compute_bounds(8);
    ASSERT_TRUE(b.yao_bound);
    EXPECT_NEAR(*b.yao_bound, 1.0 / (1.0 - 2.0 * std::sin(deg(22.5))), 1e-12);
    EXPECT_NEAR(*b.yao_bound, 4.2620, 1e-4);
    EXPECT_NEAR(*b.yao_sink_bound, *b.yao_bound * *b.yao_bound, 1e-12);
    EXPECT_EQ(b.yy_max_degree, 16);
    EXPECT_EQ(b.sink_max_degree, 80);
}

TEST(Bounds, NoYaoBoundBelowSeven) {
    EXPECT_FALSE(compute_bounds(6).yao_bound);
    EXPECT_TRUE(compute_bounds(7).yao_bound);
}

TEST(Bounds, CivilizedYaoYao) {
    const auto b = compute_bounds(24, 0.5);
    const double gap = std::cos(deg(15)) - std::sin(deg(15));
    EXPECT_NEAR(gap, 0.70711, 1e-5);
    ASSERT_TRUE(b.yy_civilized_conditions);
    EXPECT_NEAR(*b.yy_civilized_bound, 0.5 / (1.5 * gap - 1.0), 1e-12);
    EXPECT_NEAR(*b.yy_civilized_bound, 8.243, 1e-3);
    EXPECT_FALSE(compute_bounds(8, 0.5).yy_civilized_conditions);
    EXPECT_FALSE(compute_bounds(12, 0.2).yy_civilized_bound);
}

TEST(Bounds, SparseSink) {
    const auto b = compute_bounds(32, std::nullopt, 1.1);
    const double t = deg(11.25);
    const double lam2 = 1.0 / (2.2 * std::cos(t));
    const double gap = std::cos(t) - std::sin(t);
    EXPECT_NEAR(*b.sparse_sink_lambda, lam2, 1e-12);
    EXPECT_NEAR(lam2, 0.4634, 1e-4);
    EXPECT_TRUE(b.sparse_sink_stated_condition);
    EXPECT_TRUE(b.sparse_sink_derived_condition);
    EXPECT_GT(gap, 0.6833);
    ASSERT_TRUE(b.sparse_sink_bound);
    EXPECT_NEAR(*b.sparse_sink_bound, (lam2 / std::cos(2 * t)) / ((lam2 + 1) * gap - 1), 1e-12);
    EXPECT_NEAR(*b.sparse_sink_bound, 3.349, 1e-3);
}

TEST(Bounds, SparseSinkConditionFails) {
    // r close to 1 pushes lambda2 toward 1/(2 cos theta); at k = 9 the derived variant fails.
    const auto b = compute_bounds(9, std::nullopt, 1.05);
    EXPECT_FALSE(b.sparse_sink_derived_condition);
    EXPECT_FALSE(b.sparse_sink_bound);
}

TEST(Bounds, EpsilonConeCount) {
    const double lambda = 0.5, eps = 1.0;
    const auto b = compute_bounds(12, lambda, std::nullopt, eps, 2.0);
    const double target = (lambda + eps + 1) / ((lambda + 1) * (eps + 1));
    ASSERT_TRUE(b.epsilon_k);
    const int k = *b.epsilon_k;
    EXPECT_GE(k, 9);
    EXPECT_GE(cone_gap(k), target);
    if (k > 9) {
        EXPECT_LT(cone_gap(k - 1), target);
    }
    // with that k the civilized bound is at most 1 + eps
    EXPECT_LE(*compute_bounds(k, lambda).yy_civilized_bound, 1.0 + eps + 1e-12);
    EXPECT_DOUBLE_EQ(*b.epsilon_power_bound, 4.0);
}
