#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripart/geometry.hpp"

namespace tripart {

enum class Kind { acute, right, obtuse_interior, obtuse_boundary, obtuse_exterior };
enum class Method { newton, kkm, maximin, closed_form, exterior_construction };
enum class Location { interior, boundary, exterior };

const char* to_string(Kind k);
const char* to_string(Method m);
const char* to_string(Location l);

struct Classification {
    Kind kind = Kind::acute;
    /// Vertex with the obtuse angle, in the caller's labels.
    std::optional<Vertex> obtuse_vertex;
    /// LHS - RHS of the tangent criterion with the obtuse vertex as C;
    /// zero for acute and right triangles.
    double criterion_margin = 0.0;

    bool is_obtuse() const {
        return kind == Kind::obtuse_interior || kind == Kind::obtuse_boundary || kind == Kind::obtuse_exterior;
    }
    /// Whether the equal-area point lies strictly inside the triangle.
    bool point_inside() const {
        return kind == Kind::acute || kind == Kind::right || kind == Kind::obtuse_interior;
    }
};

struct SolverConfig {
    double area_tol_rel = 1e-12;
    int max_iters = 100;
    double fd_step_rel = 1e-7;
    int kkm_initial_grid = 64;
    double kkm_target_diam_rel = 1e-10;

    /// Throws std::invalid_argument unless every field is positive.
    void validate() const;
    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct SolverReport {
    Method method = Method::newton;
    int iterations = 0;
    int restarts = 0;
    std::vector<double> residual_history;
    bool verified = false;
    Point best_point;
    double best_residual = 0.0;
    std::string message;
};

/// A solver gave up. Carries the best iterate it found.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, SolverReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const SolverReport& report() const { return report_; }

private:
    SolverReport report_;
};

struct PartitionSolution {
    Point point;
    RegionAreas areas;
    std::array<ConvexPolygon, 3> regions;
    Classification classification;
    /// max_i |P_i - |T|/3|
    double residual = 0.0;
    Method method = Method::newton;
    SolverReport report;
};

/// Absolute area tolerance: area_tol_rel * area, floored at the rounding
/// noise of placing a point whose coordinates have the given magnitude.
double area_tolerance(double area, double diam, double magnitude, const SolverConfig& cfg);
double area_tolerance(const Triangle& tri, const SolverConfig& cfg);

/// Cyclic relabelling that puts the largest angle at C.
Triangle with_largest_angle_at_c(const Triangle& tri);

/// Criterion terms for a triangle whose angle at C is obtuse:
/// lhs = sqrt((1 + tan^2 A) tan B) + sqrt((1 + tan^2 B) tan A),
/// rhs = sqrt(3 (tan A + tan B)).
struct CriterionTerms {
    double lhs = 0.0;
    double rhs = 0.0;
};
CriterionTerms criterion_terms(const Triangle& obtuse_at_c);

/// `tol` is both the right-angle band (radians) and the band on the
/// criterion margin that maps to obtuse_boundary.
Classification classify(const Triangle& tri, double tol = 1e-9);

/// |AX0| and |BX0| from the closed form, with the obtuse vertex as C.
struct BoundaryDistances {
    double from_a = 0.0;
    double from_b = 0.0;
};
BoundaryDistances boundary_distances(const Triangle& tri);

/// Point on the side opposite the obtuse vertex at the closed-form distance
/// from its first endpoint. Throws std::invalid_argument for a triangle
/// without an obtuse angle.
Point boundary_point_closed_form(const Triangle& tri);

/// Offset d such that {p : n . p <= d}, with n the unit direction from
/// `keep` toward the other endpoint of `side`, cuts exactly `target_area`
/// off the triangle on `keep`'s side. The cut line is perpendicular to
/// `side`. Throws std::invalid_argument unless 0 < target_area < |T| and
/// `keep` is an endpoint of `side`.
double cut_line_offset(const Triangle& tri, Side side, Vertex keep, double target_area);

/// Intersection of the two perpendicular cut lines for an obtuse-exterior
/// triangle, Newton-polished if it does not verify.
PartitionSolution solve_exterior(const Triangle& tri, const SolverConfig& cfg = {});

/// Damped Newton on (P_A - |T|/3, P_B - |T|/3) with a forward-difference
/// Jacobian and grid restarts. Throws SolverError on non-convergence.
PartitionSolution solve_newton(const Triangle& tri, const SolverConfig& cfg = {},
                               std::optional<Point> seed = std::nullopt);

/// Maximises min(P_A, P_B, P_C) over the closed triangle by pattern search.
/// Acute and right triangles only.
PartitionSolution solve_maximin(const Triangle& tri, const SolverConfig& cfg = {});

/// Sperner labelling on refined barycentric grids. Acute and right
/// triangles only.
PartitionSolution solve_kkm(const Triangle& tri, const SolverConfig& cfg = {});

/// Classifies and dispatches to the matching solver, then attaches region
/// polygons. With `cross_check` set, acute and right triangles are also
/// solved by maximin and the two points must agree to 1e-6 * diam.
PartitionSolution equal_partition(const Triangle& tri, const SolverConfig& cfg = {}, bool cross_check = false);

struct VerifyReport {
    RegionAreas areas;
    double deviation = 0.0;
    Location location = Location::interior;
    std::array<std::size_t, 3> vertex_counts{};
    bool pass = false;
};

/// pass = deviation <= tol * |T|; location uses a band of tol * diam.
VerifyReport verify_partition(const Triangle& tri, Point x, double tol);

/// Which of R_A, R_B, R_C contain x, with an absolute area tolerance.
struct LabelSet {
    bool a = false;
    bool b = false;
    bool c = false;
    bool contains(Vertex v) const { return v == Vertex::A ? a : (v == Vertex::B ? b : c); }
};
LabelSet label_sets(const Triangle& tri, Point x, double tol = 0.0);

/// argmin of the region areas, ties to the earliest vertex.
Vertex kkm_label(const Triangle& tri, Point x);

/// P(opposite vertex, x) - min of the other two, for x on a side. Throws
/// std::invalid_argument if x is farther than 1e-12 * diam from every side.
double lemma_margin(const Triangle& tri, Point x);
bool lemma_check(const Triangle& tri, Point x);

} // namespace tripart
