#include <gtest/gtest.h>

#include "test_helpers.hpp"

using namespace udgspan;

TEST(TwoRow, Corners) {
    const auto p = gen_figure6(2);
    ASSERT_EQ(p->size(), 4u);
    EXPECT_EQ(p->pos(0), (Point{0, 1}));
    EXPECT_EQ(p->pos(1), (Point{1, 1}));
    EXPECT_EQ(p->pos(2), (Point{0, 0}));
    EXPECT_EQ(p->pos(3), (Point{1, 0}));
    EXPECT_THROW(gen_figure6(1), std::invalid_argument);
}

TEST(TwoRow, CrossPairsLongerThanOne) {
    const std::size_t s = 7;
    const auto p = gen_figure6(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            if (i == j) continue;
            const double di = static_cast<double>(i) - static_cast<double>(j);
            const double expect = std::sqrt(1.0 + std::pow(di / static_cast<double>(s - 1), 2));
            EXPECT_NEAR(p->distance(i, s + j), expect, 1e-12);
            EXPECT_GT(p->distance(i, s + j), 1.0);
        }
}

TEST(TwoRow, YaoWeight) {
    const UnitDiskGraph g(gen_figure6(5), 1.0);
    EXPECT_NEAR(total_weight(build(Structure::Y, g, 6)), 7.0, 1e-9);
}

TEST(Uniform, SinglePoint) { EXPECT_EQ(gen_uniform(1, 1.0, 0)->size(), 1u); }

TEST(Uniform, Deterministic) {
    const auto a = gen_uniform(60, 3.0, 7);
    const auto b = gen_uniform(60, 3.0, 7);
    EXPECT_EQ(*a, *b);
    EXPECT_EQ(points_to_json(*a, 1.0), points_to_json(*b, 1.0));
    EXPECT_NE(*a, *gen_uniform(60, 3.0, 8));
}

TEST(Uniform, ConnectedSixty) {
    const auto p = gen_uniform(60, 3.0, 7);
    EXPECT_EQ(p->size(), 60u);
    EXPECT_TRUE(UnitDiskGraph(p, 1.0).connected());
    for (const auto& n : p->nodes()) {
        EXPECT_GE(n.pos.x, 0.0);
        EXPECT_LE(n.pos.x, 3.0);
    }
}

TEST(Uniform, FirstDrawsMatchEngine) {
    // Coordinates are the top 53 bits of consecutive mt19937_64 outputs, x then y.
    std::mt19937_64 eng(123);
    const auto p = gen_uniform(1, 2.0, 123);
    const double x = static_cast<double>(eng() >> 11) / 9007199254740992.0 * 2.0;
    const double y = static_cast<double>(eng() >> 11) / 9007199254740992.0 * 2.0;
    EXPECT_EQ(p->pos(0), (Point{x, y}));
}

TEST(Uniform, ImpossibleThrows) { EXPECT_THROW(gen_uniform(3, 1000.0, 1), std::runtime_error); }

TEST(Civilized, TwoPoints) {
    const auto p = gen_civilized(2, 0.5, 3);
    const double d = p->distance(0, 1);
    EXPECT_GE(d, 0.5);
    EXPECT_LE(d, 1.0);
}

TEST(Civilized, ContractHolds) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = gen_civilized(60, 0.5, seed);
        ASSERT_EQ(p->size(), 60u);
        EXPECT_GE(min_pairwise_distance(*p), 0.5);
        const UnitDiskGraph g(p, 1.0);
        EXPECT_TRUE(g.connected());
        EXPECT_LE(aspect_ratio(g.points(), g.edges()), 2.0 + 1e-12);
    }
}

TEST(Civilized, Deterministic) { EXPECT_EQ(*gen_civilized(40, 0.4, 9), *gen_civilized(40, 0.4, 9)); }

TEST(Civilized, RejectsBadLambda) {
    EXPECT_THROW(gen_civilized(10, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(gen_civilized(10, 1.5, 1), std::invalid_argument);
}

TEST(GenSpec, Dispatch) {
    GenSpec s;
    s.kind = GenKind::figure6;
    s.s = 4;
    EXPECT_EQ(generate(s)->size(), 8u);
    EXPECT_EQ(parse_gen_kind("civilized"), GenKind::civilized);
    EXPECT_THROW(parse_gen_kind("poisson"), std::invalid_argument);
}
