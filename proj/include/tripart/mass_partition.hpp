#pragma once

#include <array>
#include <stdexcept>

#include "tripart/geometry.hpp"
#include "tripart/partitioner.hpp"

namespace tripart {

/// Thrown for ray configurations or targets outside the translation
/// theorem's hypotheses.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Three unit ray directions in CCW order. Sector i spans CCW from ray i to
/// ray i + 1 (mod 3); every gap is below pi.
class SectorConfig {
public:
    const std::array<Point, 3>& directions() const { return dirs_; }
    /// CCW angle from ray i to ray i + 1.
    std::array<double, 3> gaps() const;
    Sector sector(std::size_t i, Point apex) const;

private:
    friend SectorConfig validate_config(const std::array<Point, 3>& directions);
    std::array<Point, 3> dirs_{};
};

/// Normalises the directions and checks CCW order, no coincident rays and
/// every gap < pi - 1e-9. Throws ConfigError.
SectorConfig validate_config(const std::array<Point, 3>& directions);
SectorConfig config_from_degrees(const std::array<double, 3>& angles_deg);

/// Outward normals of CA, AB, BC: sector i is then the sector at vertex
/// A, B, C respectively, with gaps pi - angle.
SectorConfig triangle_config(const Triangle& tri);

struct Targets {
    std::array<double, 3> r{};

    /// Non-negative areas summing to `total` within 1e-12 relative.
    static Targets from_areas(const std::array<double, 3>& areas, double total);
    /// Non-negative fractions summing to 1 within 1e-9.
    static Targets from_fractions(const std::array<double, 3>& fractions, double total);
};

std::array<double, 3> sector_areas(const ConvexPolygon& poly, const SectorConfig& cfg, Point apex);
std::array<ConvexPolygon, 3> sector_polygons(const ConvexPolygon& poly, const SectorConfig& cfg, Point apex);

struct TranslationSolution {
    Point apex;
    std::array<double, 3> achieved{};
    /// Translation of the polygon that realises the targets with the ray
    /// bundle held at the origin; equal to -apex.
    Point translation;
    double residual = 0.0;
    SolverReport report;
};

/// Apex at which the three sector areas equal the targets. Convergence is
/// guaranteed for min target >= 1e-6 |T|; smaller targets are attempted.
/// Throws SolverError with the best iterate on failure.
TranslationSolution solve_translation(const ConvexPolygon& poly, const SectorConfig& cfg, const Targets& targets,
                                      const SolverConfig& solver = {});

} // namespace tripart
