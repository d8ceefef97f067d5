#pragma once

// Deterministic point-set generators.
//
// Randomness comes from std::mt19937_64 seeded with (seed + attempt) modulo
// 2^64, where attempt counts regenerations. A 64-bit draw x becomes the
// double (x >> 11) * 2^-53 in [0, 1), then is scaled to the square side.
// Coordinates are drawn x first, then y. Nodes get ids 0..n-1 in draw order.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace udgspan {

inline constexpr int kMaxRegenerations = 256;
/// Side of the civilized generator's square is lambda * sqrt(n) * this.
inline constexpr double kCivilizedPacking = 2.0;

class UnitRng {
public:
    explicit UnitRng(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

enum class GenKind { uniform, civilized, figure6 };

inline std::string_view to_string(GenKind k) {
    switch (k) {
        case GenKind::uniform: return "uniform";
        case GenKind::civilized: return "civilized";
        case GenKind::figure6: return "figure6";
    }
    return "?";
}

inline GenKind parse_gen_kind(std::string_view s) {
    if (s == "uniform") return GenKind::uniform;
    if (s == "civilized") return GenKind::civilized;
    if (s == "figure6") return GenKind::figure6;
    throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

struct GenSpec {
    GenKind kind = GenKind::uniform;
    std::size_t n = 0;   // uniform, civilized
    std::size_t s = 0;   // figure6: nodes per side
    double lambda = 0.5; // civilized
    double side = 1.0;   // uniform
    std::uint64_t seed = 0;
    double radius = 1.0;

    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// Two rows of s nodes on the top and bottom sides of the unit square,
/// corners included. Ids run along the top row, then the bottom row, left
/// to right.
inline PointSetPtr gen_figure6(std::size_t s) {
    if (s < 2) throw std::invalid_argument("gen_figure6: need at least 2 nodes per side");
    std::vector<Node> nodes;
    nodes.reserve(2 * s);
    const double step = static_cast<double>(s - 1);
    for (std::size_t i = 0; i < s; ++i) nodes.push_back({NodeId{i}, {static_cast<double>(i) / step, 1.0}});
    for (std::size_t i = 0; i < s; ++i) nodes.push_back({NodeId{s + i}, {static_cast<double>(i) / step, 0.0}});
    return make_point_set(std::move(nodes));
}

/// n i.i.d. uniform points in [0, side]^2. Regenerates with the next
/// sub-seed until the UDG of the given radius is connected.
inline PointSetPtr gen_uniform(std::size_t n, double side, std::uint64_t seed, double radius = 1.0) {
    if (n < 1) throw std::invalid_argument("gen_uniform: n must be at least 1");
    if (!(side > 0.0)) throw std::invalid_argument("gen_uniform: side must be positive");
    for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
        UnitRng rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<Node> nodes;
        nodes.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.next() * side;
            const double y = rng.next() * side;
            nodes.push_back({NodeId{i}, {x, y}});
        }
        PointSetPtr pts;
        try {
            pts = make_point_set(std::move(nodes));
        } catch (const std::invalid_argument&) {
            continue;  // coincident draw
        }
        if (UnitDiskGraph(pts, radius).connected()) return pts;
    }
    throw std::runtime_error("gen_uniform: no connected instance after " + std::to_string(kMaxRegenerations) +
                             " regenerations; use a smaller side or larger n");
}

/// Dart throwing in a square of side lambda * sqrt(n) * 2. A dart is kept
/// iff it is at least lambda from every kept point and, after the first,
/// within `radius` of some kept point, so the result is a connected
/// lambda-civilized UDG. Each attempt throws at most 1000 * n darts.
inline PointSetPtr gen_civilized(std::size_t n, double lambda, std::uint64_t seed, double radius = 1.0) {
    if (n < 1) throw std::invalid_argument("gen_civilized: n must be at least 1");
    if (!(lambda > 0.0) || lambda > radius)
        throw std::invalid_argument("gen_civilized: lambda must lie in (0, radius]");
    const double side = lambda * std::sqrt(static_cast<double>(n)) * kCivilizedPacking;
    const double lambda2 = lambda * lambda;
    const double radius2 = radius * radius;
    const std::size_t max_darts = 1000 * n;

    for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
        UnitRng rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<Point> kept;
        kept.reserve(n);
        for (std::size_t dart = 0; dart < max_darts && kept.size() < n; ++dart) {
            const Point p{rng.next() * side, rng.next() * side};
            bool far_enough = true;
            bool attached = kept.empty();
            for (const auto& q : kept) {
                const double d2 = squared_distance(p, q);
                if (d2 < lambda2) {
                    far_enough = false;
                    break;
                }
                if (d2 <= radius2) attached = true;
            }
            if (far_enough && attached) kept.push_back(p);
        }
        if (kept.size() < n) continue;
        std::vector<Node> nodes;
        nodes.reserve(n);
        for (std::size_t i = 0; i < n; ++i) nodes.push_back({NodeId{i}, kept[i]});
        auto pts = make_point_set(std::move(nodes));
        if (UnitDiskGraph(pts, radius).connected() && is_civilized(*pts, lambda)) return pts;
    }
    throw std::runtime_error("gen_civilized: could not place " + std::to_string(n) + " points at spacing " +
                             std::to_string(lambda) + "; use a smaller n or lambda");
}

inline PointSetPtr generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::uniform: return gen_uniform(spec.n, spec.side, spec.seed, spec.radius);
        case GenKind::civilized: return gen_civilized(spec.n, spec.lambda, spec.seed, spec.radius);
        case GenKind::figure6: return gen_figure6(spec.s);
    }
    throw std::invalid_argument("generate: bad kind");
}

}  // namespace udgspan
