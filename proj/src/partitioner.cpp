#include "tripart/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "area_newton.hpp"

namespace tripart {

namespace {

constexpr double kSliverRel = 1e-12;
constexpr double kMaximinStopRel = 1e-12;
constexpr double kMaximinAreaTolRel = 1e-8;
constexpr int kMaximinDirections = 16;
constexpr int kMaximinMaxIters = 200000;
constexpr int kKkmZoomCells = 8;
constexpr int kKkmDoublings = 4;
constexpr double kCrossCheckRel = 1e-6;

Vertex vertex_at(std::size_t i) { return static_cast<Vertex>(i % 3); }

Vertex largest_angle_vertex(const Triangle& tri) {
    Vertex best = Vertex::A;
    for (Vertex v : kVertices) {
        if (tri.angle(v) > tri.angle(best)) best = v;
    }
    return best;
}

detail::AreaSystem equal_area_system(const Triangle& tri) {
    const double third = tri.area() / 3.0;
    return {[tri](Point x) {
                const RegionAreas r = region_areas(tri, x);
                return std::array<double, 3>{r.at_a, r.at_b, r.at_c};
            },
            {third, third, third}};
}

void require_acute_or_right(const Triangle& tri, const char* who) {
    const Classification c = classify(tri);
    if (c.kind != Kind::acute && c.kind != Kind::right) {
        throw std::invalid_argument(std::string(who) + " requires an acute or right triangle, got " +
                                    to_string(c.kind));
    }
}

PartitionSolution finish(const Triangle& tri, Point x, Method method, SolverReport report,
                         const Classification& cls) {
    PartitionSolution sol;
    sol.point = x;
    sol.areas = region_areas(tri, x);
    for (Vertex v : kVertices) sol.regions[index(v)] = region_polygon(tri, v, x);
    sol.classification = cls;
    sol.residual = sol.areas.deviation_from_equal(tri.area());
    sol.method = method;
    report.method = method;
    report.best_point = x;
    report.best_residual = sol.residual;
    sol.report = std::move(report);
    return sol;
}

// Van der Corput radical inverse in base 2; rotates the poll directions.
double van_der_corput(unsigned n) {
    double q = 0.0, bk = 0.5;
    for (; n != 0; n >>= 1, bk *= 0.5) {
        if (n & 1u) q += bk;
    }
    return q;
}

} // namespace

const char* to_string(Kind k) {
    switch (k) {
    case Kind::acute: return "acute";
    case Kind::right: return "right";
    case Kind::obtuse_interior: return "obtuse-interior";
    case Kind::obtuse_boundary: return "obtuse-boundary";
    default: return "obtuse-exterior";
    }
}

const char* to_string(Method m) {
    switch (m) {
    case Method::newton: return "newton";
    case Method::kkm: return "kkm";
    case Method::maximin: return "maximin";
    case Method::closed_form: return "closed-form";
    default: return "exterior-construction";
    }
}

const char* to_string(Location l) {
    switch (l) {
    case Location::interior: return "interior";
    case Location::boundary: return "boundary";
    default: return "exterior";
    }
}

void SolverConfig::validate() const {
    if (!(area_tol_rel > 0.0) || max_iters <= 0 || !(fd_step_rel > 0.0) || kkm_initial_grid <= 0 ||
        !(kkm_target_diam_rel > 0.0)) {
        throw std::invalid_argument("solver configuration values must all be positive");
    }
}

Triangle with_largest_angle_at_c(const Triangle& tri) {
    // rotated_to(v) makes v the new A, so start one past the target
    const Vertex big = largest_angle_vertex(tri);
    return tri.rotated_to(vertex_at(index(big) + 1));
}

CriterionTerms criterion_terms(const Triangle& t) {
    const double ta = t.tan_angle(Vertex::A);
    const double tb = t.tan_angle(Vertex::B);
    return {std::sqrt((1.0 + ta * ta) * tb) + std::sqrt((1.0 + tb * tb) * ta), std::sqrt(3.0 * (ta + tb))};
}

Classification classify(const Triangle& tri, double tol) {
    Classification out;
    const Vertex big = largest_angle_vertex(tri);
    const double theta = tri.angle(big);
    const double right = std::numbers::pi / 2.0;
    if (std::abs(theta - right) <= tol) {
        out.kind = Kind::right;
        return out;
    }
    if (theta < right) {
        out.kind = Kind::acute;
        return out;
    }
    out.obtuse_vertex = big;
    const CriterionTerms terms = criterion_terms(with_largest_angle_at_c(tri));
    out.criterion_margin = terms.lhs - terms.rhs;
    if (std::abs(out.criterion_margin) <= tol) {
        out.kind = Kind::obtuse_boundary;
    } else if (out.criterion_margin > 0.0) {
        out.kind = Kind::obtuse_interior;
    } else {
        out.kind = Kind::obtuse_exterior;
    }
    return out;
}

BoundaryDistances boundary_distances(const Triangle& tri) {
    const Triangle t = with_largest_angle_at_c(tri);
    const double ta = t.tan_angle(Vertex::A);
    const double tb = t.tan_angle(Vertex::B);
    const double ab = distance(t.a(), t.b());
    const double denom = 3.0 * (ta + tb);
    return {std::sqrt((1.0 + ta * ta) * tb / denom) * ab, std::sqrt((1.0 + tb * tb) * ta / denom) * ab};
}

Point boundary_point_closed_form(const Triangle& tri) {
    if (!classify(tri).is_obtuse()) {
        throw std::invalid_argument("closed-form boundary point needs a triangle with an obtuse angle");
    }
    const Triangle t = with_largest_angle_at_c(tri);
    const BoundaryDistances d = boundary_distances(tri);
    return t.a() + d.from_a * normalized(t.b() - t.a());
}

double cut_line_offset(const Triangle& tri, Side side, Vertex keep, double target_area) {
    const auto ends = endpoints(side);
    if (keep != ends[0] && keep != ends[1]) {
        throw std::invalid_argument(std::string("vertex ") + to_string(keep) + " is not on side " + to_string(side));
    }
    if (!(target_area > 0.0 && target_area < tri.area())) {
        throw std::invalid_argument("cut target area must lie strictly between 0 and the triangle area");
    }
    const Point origin = tri.vertex(keep);
    const Point other = tri.vertex(keep == ends[0] ? ends[1] : ends[0]);
    const Point n = normalized(other - origin);
    // work relative to `keep` so the offset carries no absolute-position
    // rounding
    const ConvexPolygon local = tri.polygon().translated(-origin);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Point& p : local.vertices()) {
        lo = std::min(lo, dot(n, p));
        hi = std::max(hi, dot(n, p));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (clip_halfplane(local, HalfPlane(n, mid)).area() < target_area) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double a_lo = clip_halfplane(local, HalfPlane(n, lo)).area();
    const double a_hi = clip_halfplane(local, HalfPlane(n, hi)).area();
    const double t = std::abs(a_lo - target_area) <= std::abs(a_hi - target_area) ? lo : hi;
    return t + dot(n, origin);
}

PartitionSolution solve_exterior(const Triangle& tri, const SolverConfig& cfg) {
    cfg.validate();
    const Classification cls = classify(tri);
    if (cls.kind != Kind::obtuse_exterior) {
        throw std::invalid_argument(std::string("exterior construction needs an obtuse-exterior triangle, got ") +
                                    to_string(cls.kind));
    }
    const Triangle t = with_largest_angle_at_c(tri);
    const double third = t.area() / 3.0;
    // line a is perpendicular to CA and cuts a third off at A; line b is
    // perpendicular to BC and cuts a third off at B
    const Point na = normalized(t.c() - t.a());
    const Point nb = normalized(t.c() - t.b());
    const double da = cut_line_offset(t, Side::CA, Vertex::A, third);
    const double db = cut_line_offset(t, Side::BC, Vertex::B, third);
    const double det = cross(na, nb);
    if (!(std::abs(det) > 0.0)) {
        SolverReport rep;
        rep.method = Method::exterior_construction;
        rep.message = "cut lines are parallel";
        throw SolverError("exterior construction: cut lines are parallel", rep);
    }
    const Point x0{(da * nb.y - db * na.y) / det, (na.x * db - nb.x * da) / det};

    SolverReport report;
    report.iterations = 0;
    const double dev = region_areas(tri, x0).deviation_from_equal(tri.area());
    report.residual_history.push_back(dev);
    if (dev <= area_tolerance(tri, cfg)) {
        report.verified = true;
        return finish(tri, x0, Method::exterior_construction, std::move(report), cls);
    }
    PartitionSolution polished = solve_newton(tri, cfg, x0);
    polished.classification = cls;
    polished.report.message = "cut-line intersection did not verify; polished by Newton";
    return polished;
}

double area_tolerance(double area, double diam, double magnitude, const SolverConfig& cfg) {
    return std::max(cfg.area_tol_rel * area, 4.0 * std::numeric_limits<double>::epsilon() * magnitude * diam);
}

double area_tolerance(const Triangle& tri, const SolverConfig& cfg) {
    double m = 0.0;
    for (Vertex v : kVertices) m = std::max({m, std::abs(tri.vertex(v).x), std::abs(tri.vertex(v).y)});
    return area_tolerance(tri.area(), tri.diameter(), m + tri.diameter(), cfg);
}

PartitionSolution solve_newton(const Triangle& tri, const SolverConfig& cfg, std::optional<Point> seed) {
    cfg.validate();
    const double d = tri.diameter();
    Point lo{std::min({tri.a().x, tri.b().x, tri.c().x}) - d, std::min({tri.a().y, tri.b().y, tri.c().y}) - d};
    Point hi{std::max({tri.a().x, tri.b().x, tri.c().x}) + d, std::max({tri.a().y, tri.b().y, tri.c().y}) + d};
    const double tol = area_tolerance(tri, cfg);
    const detail::NewtonOutcome run = detail::newton_with_restarts(
        equal_area_system(tri), seed.value_or(tri.centroid()), tol, cfg.fd_step_rel * d, cfg.max_iters, lo, hi);

    SolverReport report;
    report.method = Method::newton;
    report.iterations = run.iterations;
    report.restarts = run.restarts;
    report.residual_history = run.history;
    report.best_point = run.x;
    report.best_residual = run.residual;
    if (!run.converged) {
        report.message = "Newton did not reach the area tolerance after grid restarts";
        throw SolverError("solve_newton: no convergence (best residual " + std::to_string(run.residual) + ")",
                          std::move(report));
    }
    report.verified = true;
    return finish(tri, run.x, Method::newton, std::move(report), classify(tri));
}

PartitionSolution solve_maximin(const Triangle& tri, const SolverConfig& cfg) {
    cfg.validate();
    require_acute_or_right(tri, "maximin search");
    const double d = tri.diameter();
    auto f = [&tri](Point x) { return min_area_f(tri, x); };

    SolverReport report;
    Point x = tri.centroid();
    double fx = f(x);
    double step = d / 4.0;
    const double stop = kMaximinStopRel * d;
    int iter = 0;
    while (step >= stop && iter < kMaximinMaxIters) {
        const double offset = van_der_corput(static_cast<unsigned>(iter)) * 2.0 * std::numbers::pi / kMaximinDirections;
        ++iter;
        Point best = x;
        double fbest = fx;
        for (int k = 0; k < kMaximinDirections; ++k) {
            const double ang = offset + 2.0 * std::numbers::pi * k / kMaximinDirections;
            const Point p = x + step * Point{std::cos(ang), std::sin(ang)};
            if (tri.locate(p, 0.0) < 0) continue;
            const double fp = f(p);
            if (fp > fbest) {
                fbest = fp;
                best = p;
            }
        }
        if (fbest > fx) {
            x = best;
            fx = fbest;
        } else {
            step *= 0.5;
        }
        report.residual_history.push_back(tri.area() / 3.0 - fx);
    }
    report.iterations = iter;
    const double dev = region_areas(tri, x).deviation_from_equal(tri.area());
    if (dev > kMaximinAreaTolRel * tri.area()) {
        report.best_point = x;
        report.best_residual = dev;
        report.message = "pattern search stalled away from the equal-area point";
        throw SolverError("solve_maximin: areas not equal at the maximiser (deviation " + std::to_string(dev) + ")",
                          std::move(report));
    }
    report.verified = true;
    return finish(tri, x, Method::maximin, std::move(report), classify(tri));
}

PartitionSolution solve_kkm(const Triangle& tri, const SolverConfig& cfg) {
    cfg.validate();
    require_acute_or_right(tri, "KKM search");
    const double d = tri.diameter();
    const Point g = tri.centroid();
    SolverReport report;

    // current frame is the homothetic copy g + scale * (V - g) + shift
    double scale = 1.0;
    Point center = g;
    for (int level = 0;; ++level) {
        const Point v0 = center + scale * (tri.a() - g);
        const Point e1 = scale * (tri.b() - tri.a());
        const Point e2 = scale * (tri.c() - tri.a());

        int n = cfg.kkm_initial_grid;
        std::vector<Point> hits;
        for (int attempt = 0; attempt <= kKkmDoublings && hits.empty(); ++attempt, n *= 2) {
            auto node = [&](int i, int j) { return v0 + (static_cast<double>(i) / n) * e1 + (static_cast<double>(j) / n) * e2; };
            // labels[i][j] for i + j <= n, stored row by row
            std::vector<std::vector<Vertex>> labels(n + 1);
            for (int i = 0; i <= n; ++i) {
                labels[i].resize(n + 1 - i);
                for (int j = 0; i + j <= n; ++j) labels[i][j] = kkm_label(tri, node(i, j));
            }
            auto full = [](Vertex p, Vertex q, Vertex r) { return p != q && q != r && p != r; };
            for (int i = 0; i < n; ++i) {
                for (int j = 0; i + j < n; ++j) {
                    if (full(labels[i][j], labels[i + 1][j], labels[i][j + 1])) {
                        hits.push_back((node(i, j) + node(i + 1, j) + node(i, j + 1)) / 3.0);
                    }
                    if (i + j + 2 <= n && full(labels[i + 1][j], labels[i][j + 1], labels[i + 1][j + 1])) {
                        hits.push_back((node(i + 1, j) + node(i, j + 1) + node(i + 1, j + 1)) / 3.0);
                    }
                }
            }
            ++report.iterations;
        }
        if (hits.empty()) {
            report.best_point = center;
            report.best_residual = region_areas(tri, center).deviation_from_equal(tri.area());
            report.message = "no fully labelled cell at level " + std::to_string(level);
            throw SolverError("solve_kkm: no fully labelled cell after refinement", std::move(report));
        }
        Point mean;
        for (const Point& h : hits) mean = mean + h;
        center = mean / static_cast<double>(hits.size());
        n /= 2; // undo the final doubling
        report.residual_history.push_back(region_areas(tri, center).deviation_from_equal(tri.area()));

        const double cell_diam = scale * d / n;
        if (cell_diam < cfg.kkm_target_diam_rel * d) break;
        scale *= static_cast<double>(kKkmZoomCells) / n;
        ++report.restarts;
    }
    report.verified = true;
    return finish(tri, center, Method::kkm, std::move(report), classify(tri));
}

PartitionSolution equal_partition(const Triangle& tri, const SolverConfig& cfg, bool cross_check) {
    cfg.validate();
    const Classification cls = classify(tri);
    PartitionSolution sol;
    switch (cls.kind) {
    case Kind::acute:
    case Kind::right:
    case Kind::obtuse_interior:
        sol = solve_newton(tri, cfg);
        break;
    case Kind::obtuse_boundary: {
        const Point x = boundary_point_closed_form(tri);
        SolverReport report;
        const double dev = region_areas(tri, x).deviation_from_equal(tri.area());
        report.residual_history.push_back(dev);
        if (dev <= area_tolerance(tri, cfg)) {
            report.verified = true;
            sol = finish(tri, x, Method::closed_form, std::move(report), cls);
        } else {
            // inside the classification band but off the exact manifold
            sol = solve_newton(tri, cfg, x);
            sol.report.message = "closed-form point polished by Newton";
        }
        break;
    }
    case Kind::obtuse_exterior:
        sol = solve_exterior(tri, cfg);
        break;
    }
    sol.classification = cls;

    if (cross_check && (cls.kind == Kind::acute || cls.kind == Kind::right)) {
        const PartitionSolution other = solve_maximin(tri, cfg);
        if (distance(other.point, sol.point) > kCrossCheckRel * tri.diameter()) {
            SolverReport rep = sol.report;
            rep.verified = false;
            rep.message = "maximin cross-check disagrees with " + std::string(to_string(sol.method));
            throw SolverError("equal_partition: cross-check failed", std::move(rep));
        }
    }
    if (sol.residual > area_tolerance(tri, cfg)) {
        SolverReport rep = sol.report;
        rep.verified = false;
        rep.message = "final residual above tolerance";
        throw SolverError("equal_partition: residual " + std::to_string(sol.residual) + " above tolerance",
                          std::move(rep));
    }
    sol.report.verified = true;
    return sol;
}

VerifyReport verify_partition(const Triangle& tri, Point x, double tol) {
    VerifyReport out;
    out.areas = region_areas(tri, x);
    out.deviation = out.areas.deviation_from_equal(tri.area());
    switch (tri.locate(x, tol * tri.diameter())) {
    case 1: out.location = Location::interior; break;
    case 0: out.location = Location::boundary; break;
    default: out.location = Location::exterior; break;
    }
    for (Vertex v : kVertices) out.vertex_counts[index(v)] = region_polygon(tri, v, x).size();
    out.pass = out.deviation <= tol * tri.area();
    return out;
}

LabelSet label_sets(const Triangle& tri, Point x, double tol) {
    const RegionAreas r = region_areas(tri, x);
    const double f = r.min();
    return {r.at_a <= f + tol, r.at_b <= f + tol, r.at_c <= f + tol};
}

Vertex kkm_label(const Triangle& tri, Point x) {
    const RegionAreas r = region_areas(tri, x);
    Vertex best = Vertex::A;
    for (Vertex v : {Vertex::B, Vertex::C}) {
        if (r[v] < r[best]) best = v;
    }
    return best;
}

double lemma_margin(const Triangle& tri, Point x) {
    Side nearest = Side::AB;
    double best = std::numeric_limits<double>::infinity();
    for (Side s : kSides) {
        const Segment seg = tri.side(s);
        const Point dir = seg.b - seg.a;
        const double t = std::clamp(dot(x - seg.a, dir) / dot(dir, dir), 0.0, 1.0);
        const double dist = distance(x, seg.a + t * dir);
        if (dist < best) {
            best = dist;
            nearest = s;
        }
    }
    if (best > 1e-12 * tri.diameter()) {
        throw std::invalid_argument("lemma_check: point is not on the triangle boundary");
    }
    const Vertex opp = opposite_vertex(nearest);
    const auto ends = endpoints(nearest);
    const RegionAreas r = region_areas(tri, x);
    return r[opp] - std::min(r[ends[0]], r[ends[1]]);
}

bool lemma_check(const Triangle& tri, Point x) { return lemma_margin(tri, x) > 0.0; }

} // namespace tripart
