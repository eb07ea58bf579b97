#include "tripart/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numbers>

namespace tripart {

namespace {

constexpr double kClipTolRel = 1e-14;
constexpr double kDegenerateRel = 1e-12;
constexpr double kSliverRel = 1e-12;

double extent(std::span<const Point> pts) {
    if (pts.empty()) return 0.0;
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const Point& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return std::max(xmax - xmin, ymax - ymin);
}

// Shoelace relative to the first vertex to limit cancellation for polygons
// far from the origin.
double signed_area(std::span<const Point> pts) {
    if (pts.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        twice += cross(pts[i] - pts[0], pts[i + 1] - pts[0]);
    }
    return 0.5 * twice;
}

void drop_repeats(std::vector<Point>& pts, double tol) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) {
        if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    pts = std::move(out);
}

} // namespace

double ccw_angle(Point from, Point to) {
    double a = std::atan2(cross(from, to), dot(from, to));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

const char* to_string(Vertex v) {
    switch (v) {
    case Vertex::A: return "A";
    case Vertex::B: return "B";
    default: return "C";
    }
}

const char* to_string(Side s) {
    switch (s) {
    case Side::AB: return "AB";
    case Side::BC: return "BC";
    default: return "CA";
    }
}

// ---------------------------------------------------------------- HalfPlane

HalfPlane::HalfPlane(Point normal, double offset) {
    const double len = norm(normal);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(offset)) {
        throw GeometryError("half-plane normal must be finite and non-zero");
    }
    normal_ = normal / len;
    offset_ = offset / len;
}

HalfPlane HalfPlane::through(Point p, Point normal) {
    const Point n = normalized(normal);
    return HalfPlane(n, dot(n, p));
}

// ------------------------------------------------------------ ConvexPolygon

ConvexPolygon ConvexPolygon::from_points(std::vector<Point> pts) {
    for (const Point& p : pts) {
        if (!is_finite(p)) throw GeometryError("polygon vertex is not finite");
    }
    const double ext = extent(pts);
    drop_repeats(pts, kClipTolRel * ext);
    if (pts.empty()) return {};
    if (pts.size() < 3) throw GeometryError("polygon needs at least 3 distinct vertices");
    if (signed_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
    const std::size_t n = pts.size();
    const double tol = 1e-12 * ext * ext;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e1 = pts[(i + 1) % n] - pts[i];
        const Point e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
        if (cross(e1, e2) < -tol) throw GeometryError("polygon is not convex");
    }
    // A star-shaped self-overlapping vertex list passes the local test;
    // total turning of a simple convex polygon is exactly 2*pi.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e1 = pts[(i + 1) % n] - pts[i];
        const Point e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
        turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw GeometryError("polygon winds more than once");
    }
    return ConvexPolygon(std::move(pts));
}

ConvexPolygon ConvexPolygon::from_trusted(std::vector<Point> pts) {
    return ConvexPolygon(std::move(pts));
}

double ConvexPolygon::area() const { return std::max(0.0, signed_area(vertices_)); }

Point ConvexPolygon::centroid() const {
    if (vertices_.empty()) return {};
    const Point o = vertices_[0];
    double twice = 0.0;
    Point acc;
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
        const Point p = vertices_[i] - o;
        const Point q = vertices_[i + 1] - o;
        const double w = cross(p, q);
        twice += w;
        acc = acc + w * (p + q);
    }
    if (twice == 0.0) {
        Point mean;
        for (const Point& v : vertices_) mean = mean + v;
        return mean / static_cast<double>(vertices_.size());
    }
    return o + acc / (3.0 * twice);
}

double ConvexPolygon::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
            d = std::max(d, distance(vertices_[i], vertices_[j]));
        }
    }
    return d;
}

ConvexPolygon ConvexPolygon::translated(Point v) const {
    std::vector<Point> pts(vertices_.begin(), vertices_.end());
    for (Point& p : pts) p = p + v;
    return ConvexPolygon(std::move(pts));
}

ConvexPolygon ConvexPolygon::merged(double tol) const {
    std::vector<Point> pts(vertices_.begin(), vertices_.end());
    bool changed = true;
    while (changed && pts.size() >= 3) {
        changed = false;
        const std::size_t before = pts.size();
        drop_repeats(pts, tol);
        if (pts.size() != before) changed = true;
        for (std::size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
            const Point prev = pts[(i + pts.size() - 1) % pts.size()];
            const Point next = pts[(i + 1) % pts.size()];
            const Point chord = next - prev;
            const double len = norm(chord);
            if (len == 0.0) continue;
            if (std::abs(cross(chord, pts[i] - prev)) / len < tol) {
                pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (pts.size() < 3) return {};
    return ConvexPolygon(std::move(pts));
}

// ------------------------------------------------------------------ Triangle

Triangle::Triangle(Point a, Point b, Point c) : v_{a, b, c} {
    for (const Point& p : v_) {
        if (!is_finite(p)) throw GeometryError("triangle vertex is not finite");
    }
    diam_ = std::max({distance(a, b), distance(b, c), distance(c, a)});
    double s = 0.5 * cross(b - a, c - a);
    if (!(std::abs(s) >= kDegenerateRel * diam_ * diam_) || diam_ == 0.0) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "degenerate triangle: signed area %.6g is below 1e-12 * diam^2 (diam %.6g)", s,
                      diam_);
        throw GeometryError(msg);
    }
    if (s < 0.0) {
        std::swap(v_[1], v_[2]);
        s = -s;
    }
    area_ = s;
}

Segment Triangle::side(Side s) const {
    const auto [p, q] = endpoints(s);
    return {vertex(p), vertex(q)};
}

double Triangle::angle(Vertex v) const {
    const std::size_t i = index(v);
    const Point u = v_[(i + 1) % 3] - v_[i];
    const Point w = v_[(i + 2) % 3] - v_[i];
    return std::atan2(std::abs(cross(u, w)), dot(u, w));
}

double Triangle::tan_angle(Vertex v) const {
    const std::size_t i = index(v);
    const Point u = v_[(i + 1) % 3] - v_[i];
    const Point w = v_[(i + 2) % 3] - v_[i];
    return cross(u, w) / dot(u, w);
}

ConvexPolygon Triangle::polygon() const {
    return ConvexPolygon::from_trusted({v_[0], v_[1], v_[2]});
}

Triangle Triangle::rotated_to(Vertex v) const {
    const std::size_t i = index(v);
    return Triangle(v_[i], v_[(i + 1) % 3], v_[(i + 2) % 3]);
}

double Triangle::side_distance(Point p, Side s) const {
    const Segment seg = side(s);
    return dot(outward_normal(*this, s), p - seg.a);
}

int Triangle::locate(Point p, double tol) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (Side s : kSides) worst = std::max(worst, side_distance(p, s));
    if (worst > tol) return -1;
    if (worst >= -tol) return 0;
    return 1;
}

// -------------------------------------------------------------------- Sector

Sector Sector::from_rays(Point apex, Point first_ray, Point second_ray) {
    if (!is_finite(apex)) throw GeometryError("sector apex is not finite");
    const Point r1 = normalized(first_ray);
    const Point r2 = normalized(second_ray);
    const double width = ccw_angle(r1, r2);
    if (!(width > 0.0 && width < std::numbers::pi)) {
        throw GeometryError("sector opening must lie strictly between 0 and pi");
    }
    // cross(r1, d) >= 0 and cross(d, r2) >= 0 for d = p - apex
    return Sector(apex, HalfPlane::through(apex, {r1.y, -r1.x}),
                  HalfPlane::through(apex, {-r2.y, r2.x}));
}

Point Sector::first_ray() const { return {-left_.normal().y, left_.normal().x}; }
Point Sector::second_ray() const { return {right_.normal().y, -right_.normal().x}; }
double Sector::width() const { return ccw_angle(first_ray(), second_ray()); }

// --------------------------------------------------------------- RegionAreas

double RegionAreas::min() const { return std::min({at_a, at_b, at_c}); }

double RegionAreas::deviation_from_equal(double total) const {
    const double third = total / 3.0;
    return std::max({std::abs(at_a - third), std::abs(at_b - third), std::abs(at_c - third)});
}

// ---------------------------------------------------------------- operations

double polygon_area(const ConvexPolygon& poly) { return poly.area(); }

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h) {
    const auto in = poly.vertices();
    const std::size_t n = in.size();
    if (n == 0) return {};
    const double eps = kClipTolRel * extent(in);
    std::vector<Point> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point cur = in[i];
        const Point nxt = in[(i + 1) % n];
        const double sc = h.signed_distance(cur);
        const double sn = h.signed_distance(nxt);
        if (sc <= eps) out.push_back(cur);
        if ((sc < -eps && sn > eps) || (sc > eps && sn < -eps)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    // exact duplicates only; near-duplicates are left to merged()
    std::vector<Point> dedup;
    dedup.reserve(out.size());
    for (const Point& p : out) {
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    }
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    if (dedup.size() < 3) return {};
    return ConvexPolygon::from_trusted(std::move(dedup));
}

ConvexPolygon clip_sector(const ConvexPolygon& poly, const Sector& s) {
    return clip_halfplane(clip_halfplane(poly, s.left()), s.right());
}

Point outward_normal(const Triangle& tri, Side side) {
    const Segment seg = tri.side(side);
    const Point d = normalized(seg.b - seg.a);
    return {d.y, -d.x};
}

Sector sector_at_vertex(const Triangle& tri, Vertex v, Point x) {
    // incoming side first, outgoing side second (CCW)
    Side incoming = Side::CA, outgoing = Side::AB;
    switch (v) {
    case Vertex::A: incoming = Side::CA; outgoing = Side::AB; break;
    case Vertex::B: incoming = Side::AB; outgoing = Side::BC; break;
    case Vertex::C: incoming = Side::BC; outgoing = Side::CA; break;
    }
    return Sector::from_rays(x, outward_normal(tri, incoming), outward_normal(tri, outgoing));
}

namespace {

// same triangle with vertex A at the origin
Triangle local_frame(const Triangle& tri) {
    const Point o = tri.vertex(Vertex::A);
    return Triangle({0.0, 0.0}, tri.vertex(Vertex::B) - o, tri.vertex(Vertex::C) - o);
}

} // namespace

double region_area(const Triangle& tri, Vertex v, Point x) {
    const Triangle local = local_frame(tri);
    return clip_sector(local.polygon(), sector_at_vertex(local, v, x - tri.vertex(Vertex::A))).area();
}

RegionAreas region_areas(const Triangle& tri, Point x) {
    return {region_area(tri, Vertex::A, x), region_area(tri, Vertex::B, x),
            region_area(tri, Vertex::C, x)};
}

ConvexPolygon region_polygon(const Triangle& tri, Vertex v, Point x) {
    const Point o = tri.vertex(Vertex::A);
    const Triangle local = local_frame(tri);
    return clip_sector(local.polygon(), sector_at_vertex(local, v, x - o))
        .merged(kSliverRel * tri.diameter())
        .translated(o);
}

double min_area_f(const Triangle& tri, Point x) { return region_areas(tri, x).min(); }

Point foot_of_perpendicular(Point x, const Segment& seg) {
    const Point d = seg.b - seg.a;
    const double len2 = dot(d, d);
    if (!(len2 > 0.0)) throw GeometryError("segment has zero length");
    return seg.a + (dot(x - seg.a, d) / len2) * d;
}

} // namespace tripart
