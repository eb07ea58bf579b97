#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tripart {

/// Thrown when input geometry violates a type invariant (non-finite
/// coordinates, collinear triangles, non-convex polygons).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point normalized(Point a) { return a / norm(a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Counter-clockwise angle from `from` to `to`, in [0, 2*pi).
double ccw_angle(Point from, Point to);

enum class Vertex { A = 0, B = 1, C = 2 };

/// Sides are named by their CCW endpoints: AB runs A -> B, BC runs B -> C,
/// CA runs C -> A.
enum class Side { AB = 0, BC = 1, CA = 2 };

inline constexpr std::array<Vertex, 3> kVertices{Vertex::A, Vertex::B, Vertex::C};
inline constexpr std::array<Side, 3> kSides{Side::AB, Side::BC, Side::CA};

constexpr std::size_t index(Vertex v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(Side s) { return static_cast<std::size_t>(s); }

/// The side that does not touch `v`.
constexpr Side opposite_side(Vertex v) {
    switch (v) {
    case Vertex::A: return Side::BC;
    case Vertex::B: return Side::CA;
    default: return Side::AB;
    }
}

/// The vertex not on `s`.
constexpr Vertex opposite_vertex(Side s) {
    switch (s) {
    case Side::AB: return Vertex::C;
    case Side::BC: return Vertex::A;
    default: return Vertex::B;
    }
}

/// First and second endpoint of a side in CCW order.
constexpr std::array<Vertex, 2> endpoints(Side s) {
    switch (s) {
    case Side::AB: return {Vertex::A, Vertex::B};
    case Side::BC: return {Vertex::B, Vertex::C};
    default: return {Vertex::C, Vertex::A};
    }
}

const char* to_string(Vertex v);
const char* to_string(Side s);

struct Segment {
    Point a;
    Point b;
};

/// Closed half-plane {p : normal . p <= offset}.
class HalfPlane {
public:
    /// Throws GeometryError for a zero or non-finite normal.
    HalfPlane(Point normal, double offset);

    /// Half-plane whose boundary passes through `p`.
    static HalfPlane through(Point p, Point normal);

    Point normal() const { return normal_; }
    double offset() const { return offset_; }

    /// normal . p - offset; negative inside.
    double signed_distance(Point p) const { return dot(normal_, p) - offset_; }
    bool contains(Point p, double tol = 0.0) const { return signed_distance(p) <= tol; }

    /// The closed complement.
    HalfPlane flipped() const { return HalfPlane(-normal_, -offset_); }

private:
    Point normal_;
    double offset_;
};

class ConvexPolygon {
public:
    ConvexPolygon() = default;

    /// Validates finiteness and convexity, drops repeated consecutive
    /// vertices and reorients clockwise input to CCW. Throws GeometryError.
    static ConvexPolygon from_points(std::vector<Point> pts);

    /// No validation; for clipper output that is convex by construction.
    static ConvexPolygon from_trusted(std::vector<Point> pts);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }

    double area() const;
    Point centroid() const;
    /// Largest vertex-to-vertex distance.
    double diameter() const;
    ConvexPolygon translated(Point v) const;

    /// Merges consecutive vertices closer than `tol` and drops vertices
    /// whose distance to the chord of their neighbours is below `tol`.
    ConvexPolygon merged(double tol) const;

    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

private:
    explicit ConvexPolygon(std::vector<Point> pts) : vertices_(std::move(pts)) {}
    std::vector<Point> vertices_;
};

/// Non-degenerate triangle stored counter-clockwise.
class Triangle {
public:
    /// Reorders clockwise input to CCW by swapping b and c. Throws
    /// GeometryError if |signed area| < 1e-12 * diam^2 or a coordinate is
    /// not finite.
    Triangle(Point a, Point b, Point c);

    Point a() const { return v_[0]; }
    Point b() const { return v_[1]; }
    Point c() const { return v_[2]; }
    Point vertex(Vertex v) const { return v_[index(v)]; }
    Segment side(Side s) const;

    double area() const { return area_; }
    double diameter() const { return diam_; }
    Point centroid() const { return (v_[0] + v_[1] + v_[2]) / 3.0; }

    /// Interior angle at `v`, radians.
    double angle(Vertex v) const;
    /// tan of the interior angle at `v`, computed as cross / dot.
    double tan_angle(Vertex v) const;

    ConvexPolygon polygon() const;

    /// Cyclic relabelling so that `v` becomes A; orientation is kept.
    Triangle rotated_to(Vertex v) const;

    /// 1 = strictly inside, 0 = within `tol` of the boundary, -1 = outside.
    int locate(Point p, double tol) const;
    /// Signed distance from `p` to the supporting line of side `s`,
    /// positive on the outside.
    double side_distance(Point p, Side s) const;

private:
    std::array<Point, 3> v_;
    double area_ = 0.0;
    double diam_ = 0.0;
};

/// Convex angular region at `apex`, bounded by two rays with CCW opening
/// strictly less than pi. Represented as the intersection of two closed
/// half-planes.
class Sector {
public:
    /// Region swept CCW from `first_ray` to `second_ray`. Throws
    /// GeometryError unless the opening is in (0, pi).
    static Sector from_rays(Point apex, Point first_ray, Point second_ray);

    Point apex() const { return apex_; }
    const HalfPlane& left() const { return left_; }
    const HalfPlane& right() const { return right_; }
    Point first_ray() const;
    Point second_ray() const;
    double width() const;
    bool contains(Point p, double tol = 0.0) const {
        return left_.contains(p, tol) && right_.contains(p, tol);
    }

private:
    Sector(Point apex, HalfPlane left, HalfPlane right) : apex_(apex), left_(left), right_(right) {}
    Point apex_;
    HalfPlane left_;
    HalfPlane right_;
};

/// P(A,X), P(B,X), P(C,X).
struct RegionAreas {
    double at_a = 0.0;
    double at_b = 0.0;
    double at_c = 0.0;

    double operator[](Vertex v) const {
        return v == Vertex::A ? at_a : (v == Vertex::B ? at_b : at_c);
    }
    double sum() const { return at_a + at_b + at_c; }
    double min() const;
    /// max_i |P_i - total/3|
    double deviation_from_equal(double total) const;
};

double polygon_area(const ConvexPolygon& poly);

/// Sutherland-Hodgman against a single half-plane. Vertices within
/// 1e-14 * extent of the cut line are kept as-is.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h);

ConvexPolygon clip_sector(const ConvexPolygon& poly, const Sector& s);

/// Unit normal of `side`, pointing away from the opposite vertex.
Point outward_normal(const Triangle& tri, Side side);

/// Sector at `x` bounded by the perpendiculars through `x` to the two sides
/// adjacent to `v`, opening toward `v`. Its width is pi - angle(v).
Sector sector_at_vertex(const Triangle& tri, Vertex v, Point x);

double region_area(const Triangle& tri, Vertex v, Point x);
RegionAreas region_areas(const Triangle& tri, Point x);

/// tri intersected with sector_at_vertex, with sliver vertices closer than
/// 1e-12 * diam merged.
ConvexPolygon region_polygon(const Triangle& tri, Vertex v, Point x);

/// min(P(A,x), P(B,x), P(C,x))
double min_area_f(const Triangle& tri, Point x);

/// Orthogonal projection onto the supporting line of `seg`. Throws
/// GeometryError for a zero-length segment.
Point foot_of_perpendicular(Point x, const Segment& seg);

} // namespace tripart
