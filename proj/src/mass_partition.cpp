#include "tripart/mass_partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "area_newton.hpp"

namespace tripart {

namespace {

constexpr double kGapGuard = 1e-9;
constexpr double kCoincidentRays = 1e-12;

} // namespace

std::array<double, 3> SectorConfig::gaps() const {
    return {ccw_angle(dirs_[0], dirs_[1]), ccw_angle(dirs_[1], dirs_[2]), ccw_angle(dirs_[2], dirs_[0])};
}

Sector SectorConfig::sector(std::size_t i, Point apex) const {
    return Sector::from_rays(apex, dirs_[i % 3], dirs_[(i + 1) % 3]);
}

SectorConfig validate_config(const std::array<Point, 3>& directions) {
    SectorConfig cfg;
    for (std::size_t i = 0; i < 3; ++i) {
        const double len = norm(directions[i]);
        if (!std::isfinite(len) || !(len > 0.0)) throw ConfigError("ray direction must be finite and non-zero");
        cfg.dirs_[i] = directions[i] / len;
    }
    const auto g = cfg.gaps();
    for (double gap : g) {
        if (gap < kCoincidentRays) throw ConfigError("coincident rays");
    }
    if (std::abs(g[0] + g[1] + g[2] - 2.0 * std::numbers::pi) > 1e-9) {
        throw ConfigError("rays are not in counter-clockwise order");
    }
    for (double gap : g) {
        if (gap >= std::numbers::pi - kGapGuard) {
            throw ConfigError("angle between consecutive rays must be below pi (got " +
                              std::to_string(gap * 180.0 / std::numbers::pi) + " degrees)");
        }
    }
    return cfg;
}

SectorConfig config_from_degrees(const std::array<double, 3>& angles_deg) {
    std::array<Point, 3> dirs;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!std::isfinite(angles_deg[i])) throw ConfigError("ray angle is not finite");
        const double a = angles_deg[i] * std::numbers::pi / 180.0;
        dirs[i] = {std::cos(a), std::sin(a)};
    }
    return validate_config(dirs);
}

SectorConfig triangle_config(const Triangle& tri) {
    return validate_config(
        {outward_normal(tri, Side::CA), outward_normal(tri, Side::AB), outward_normal(tri, Side::BC)});
}

Targets Targets::from_areas(const std::array<double, 3>& areas, double total) {
    double sum = 0.0;
    for (double a : areas) {
        if (!std::isfinite(a) || a < 0.0) throw ConfigError("target areas must be finite and non-negative");
        sum += a;
    }
    if (std::abs(sum - total) > 1e-12 * total) throw ConfigError("target areas must sum to the polygon area");
    return {areas};
}

Targets Targets::from_fractions(const std::array<double, 3>& fractions, double total) {
    double sum = 0.0;
    for (double f : fractions) {
        if (!std::isfinite(f) || f < 0.0) throw ConfigError("target fractions must be finite and non-negative");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("target fractions must sum to 1");
    // rescale so the areas sum to total exactly up to rounding
    return {{fractions[0] / sum * total, fractions[1] / sum * total, fractions[2] / sum * total}};
}

std::array<double, 3> sector_areas(const ConvexPolygon& poly, const SectorConfig& cfg, Point apex) {
    if (poly.empty()) return {0.0, 0.0, 0.0};
    // clip in a frame anchored at the first vertex
    const Point o = poly[0];
    const ConvexPolygon local = poly.translated(-o);
    return {clip_sector(local, cfg.sector(0, apex - o)).area(), clip_sector(local, cfg.sector(1, apex - o)).area(),
            clip_sector(local, cfg.sector(2, apex - o)).area()};
}

std::array<ConvexPolygon, 3> sector_polygons(const ConvexPolygon& poly, const SectorConfig& cfg, Point apex) {
    const double tol = 1e-12 * poly.diameter();
    return {clip_sector(poly, cfg.sector(0, apex)).merged(tol), clip_sector(poly, cfg.sector(1, apex)).merged(tol),
            clip_sector(poly, cfg.sector(2, apex)).merged(tol)};
}

TranslationSolution solve_translation(const ConvexPolygon& poly, const SectorConfig& cfg, const Targets& targets,
                                      const SolverConfig& solver) {
    solver.validate();
    if (poly.empty()) throw ConfigError("polygon is empty");
    const double total = poly.area();
    const double diam = poly.diameter();
    const detail::AreaSystem sys{[&](Point apex) { return sector_areas(poly, cfg, apex); }, targets.r};
    Point lo = poly[0], hi = poly[0];
    for (const Point& p : poly.vertices()) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    lo = lo - Point{2.0 * diam, 2.0 * diam};
    hi = hi + Point{2.0 * diam, 2.0 * diam};

    const double magnitude = std::max({std::abs(lo.x), std::abs(lo.y), std::abs(hi.x), std::abs(hi.y)});
    const detail::NewtonOutcome run = detail::newton_with_restarts(
        sys, poly.centroid(), area_tolerance(total, diam, magnitude, solver), solver.fd_step_rel * diam, solver.max_iters, lo, hi);

    TranslationSolution out;
    out.apex = run.x;
    out.achieved = sector_areas(poly, cfg, run.x);
    out.translation = -run.x;
    out.residual = run.residual;
    out.report.method = Method::newton;
    out.report.iterations = run.iterations;
    out.report.restarts = run.restarts;
    out.report.residual_history = run.history;
    out.report.best_point = run.x;
    out.report.best_residual = run.residual;
    if (!run.converged) {
        out.report.message = "translation search did not reach the area tolerance";
        throw SolverError("solve_translation: no convergence (best residual " + std::to_string(run.residual) + ")",
                          out.report);
    }
    out.report.verified = true;
    return out;
}

} // namespace tripart
