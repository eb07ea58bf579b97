// Random instance generators shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "tripart/geometry.hpp"

namespace shapes {

using tripart::Point;
using tripart::Triangle;

inline std::optional<Triangle> try_triangle(Point a, Point b, Point c) {
    try {
        return Triangle(a, b, c);
    } catch (const tripart::GeometryError&) {
        return std::nullopt;
    }
}

/// Vertices uniform in the unit square; degenerate draws are rejected.
inline Triangle random_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        if (auto t = try_triangle({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)})) return *t;
    }
}

inline double max_angle(const Triangle& t) {
    return std::max({t.angle(tripart::Vertex::A), t.angle(tripart::Vertex::B), t.angle(tripart::Vertex::C)});
}

inline double min_angle(const Triangle& t) {
    return std::min({t.angle(tripart::Vertex::A), t.angle(tripart::Vertex::B), t.angle(tripart::Vertex::C)});
}

inline Triangle random_acute(std::mt19937_64& rng, double min_angle_rad = 0.0) {
    for (;;) {
        Triangle t = random_triangle(rng);
        if (max_angle(t) < std::numbers::pi / 2 && min_angle(t) >= min_angle_rad) return t;
    }
}

/// Triangle with base (0,0)-(1,0) and the given base angles.
inline Triangle from_angles(double angle_a, double angle_b) {
    const double angle_c = std::numbers::pi - angle_a - angle_b;
    const double ac = std::sin(angle_b) / std::sin(angle_c);
    return Triangle({0.0, 0.0}, {1.0, 0.0}, {ac * std::cos(angle_a), ac * std::sin(angle_a)});
}

struct Similarity {
    double scale = 1.0;
    double rotation = 0.0;
    bool reflect = false;
    Point shift{};

    Point operator()(Point p) const {
        if (reflect) p.y = -p.y;
        const double c = std::cos(rotation), s = std::sin(rotation);
        return Point{scale * (c * p.x - s * p.y), scale * (s * p.x + c * p.y)} + shift;
    }
    Triangle operator()(const Triangle& t) const { return Triangle((*this)(t.a()), (*this)(t.b()), (*this)(t.c())); }
};

inline Similarity random_similarity(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Similarity s;
    s.scale = std::pow(10.0, -2.0 + 4.0 * u(rng));
    s.rotation = 2.0 * std::numbers::pi * u(rng);
    s.reflect = u(rng) < 0.5;
    s.shift = {200.0 * u(rng) - 100.0, 200.0 * u(rng) - 100.0};
    return s;
}

/// Convex polygon with `n` vertices at sorted random angles on a random
/// ellipse.
inline std::vector<Point> random_convex_points(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> angles(n);
    for (double& a : angles) a = 2.0 * std::numbers::pi * u(rng);
    std::sort(angles.begin(), angles.end());
    const double rx = 0.5 + u(rng), ry = 0.5 + u(rng), rot = 2.0 * std::numbers::pi * u(rng);
    const Point center{4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0};
    std::vector<Point> pts;
    for (double a : angles) {
        const Point e{rx * std::cos(a), ry * std::sin(a)};
        pts.push_back(center + Point{std::cos(rot) * e.x - std::sin(rot) * e.y, std::sin(rot) * e.x + std::cos(rot) * e.y});
    }
    return pts;
}

} // namespace shapes
