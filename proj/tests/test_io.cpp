#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <map>
#include <set>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "shapes.hpp"
#include "tripart/io.hpp"

using namespace tripart;
using doctest::Approx;

namespace {

const std::string kEquilateralSpec = R"({"mode":"triangle","triangle":[[0,0],[1,0],[0.5,0.866025403784]]})";

ErrorCode error_code(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.code();
    }
    FAIL("expected SpecError for " << text);
    return ErrorCode::malformed_json;
}

std::string error_message(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e.what();
    }
    return {};
}

// Minimal well-formedness check: balanced elements, quoted attributes,
// numeric geometry attributes and path data made of M/L/Z and numbers.
struct XmlCheck {
    bool ok = true;
    std::string error;
    std::map<std::string, int> elements;
    std::vector<std::string> paths;
};

bool numeric(const std::string& s) {
    static const std::regex num(R"(-?\d+(\.\d+)?)");
    return std::regex_match(s, num);
}

XmlCheck check_svg(const std::string& doc) {
    XmlCheck out;
    auto fail = [&](const std::string& why) {
        out.ok = false;
        if (out.error.empty()) out.error = why;
    };
    static const std::set<std::string> numeric_attrs{"x", "y", "x1", "y1", "x2", "y2", "cx", "cy", "r", "width", "height", "dy"};
    static const std::regex attr(R"re(\s+([a-zA-Z][a-zA-Z0-9:-]*)="([^"<&]*)")re");
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool root_seen = false;
    while (i < doc.size()) {
        const std::size_t lt = doc.find('<', i);
        if (lt == std::string::npos) break;
        if (doc.compare(lt, 4, "<!--") == 0) {
            const std::size_t end = doc.find("-->", lt);
            if (end == std::string::npos) return fail("unterminated comment"), out;
            i = end + 3;
            continue;
        }
        if (doc.compare(lt, 2, "<?") == 0) {
            const std::size_t end = doc.find("?>", lt);
            if (end == std::string::npos || lt != 0) return fail("bad declaration"), out;
            i = end + 2;
            continue;
        }
        const std::size_t gt = doc.find('>', lt);
        if (gt == std::string::npos) return fail("unterminated tag"), out;
        std::string tag = doc.substr(lt + 1, gt - lt - 1);
        i = gt + 1;
        if (tag.starts_with("/")) {
            if (stack.empty() || stack.back() != tag.substr(1)) return fail("mismatched </" + tag.substr(1) + ">"), out;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        if (self_closing) tag.pop_back();
        const std::size_t sp = tag.find_first_of(" \n");
        const std::string name = tag.substr(0, sp);
        if (stack.empty() && root_seen) fail("content after the root element");
        if (stack.empty()) {
            if (name != "svg") fail("root element is " + name);
            root_seen = true;
        }
        ++out.elements[name];
        std::string rest = sp == std::string::npos ? "" : tag.substr(sp);
        std::smatch m;
        while (std::regex_search(rest, m, attr) && m.position(0) == 0) {
            const std::string key = m[1], val = m[2];
            if (name != "svg" && numeric_attrs.contains(key) && !numeric(val)) fail(key + "=\"" + val + "\" not numeric");
            if (key == "d") {
                out.paths.push_back(val);
                std::istringstream ss(val);
                std::string tok;
                while (ss >> tok) {
                    if (tok == "M" || tok == "L" || tok == "Z") continue;
                    const auto comma = tok.find(',');
                    if (comma == std::string::npos || !numeric(tok.substr(0, comma)) || !numeric(tok.substr(comma + 1))) {
                        fail("bad path token " + tok);
                    }
                }
            }
            if (key == "points") {
                std::istringstream ss(val);
                std::string tok;
                while (ss >> tok) {
                    const auto comma = tok.find(',');
                    if (comma == std::string::npos || !numeric(tok.substr(0, comma)) || !numeric(tok.substr(comma + 1))) {
                        fail("bad points token " + tok);
                    }
                }
            }
            rest = m.suffix();
        }
        if (rest.find_first_not_of(" \n") != std::string::npos) fail("unparsed attribute text in <" + name + ">: " + rest);
        if (!self_closing) stack.push_back(name);
    }
    if (!stack.empty()) fail("unclosed <" + stack.back() + ">");
    if (!root_seen) fail("no root element");
    return out;
}

std::size_t path_vertices(const std::string& d) {
    std::size_t n = 0;
    for (char c : d) n += (c == 'M' || c == 'L');
    return n;
}

Report solve_text(const std::string& text) { return run(parse_spec(text)); }

std::string triangle_spec(const Triangle& t) {
    ProblemSpec spec;
    spec.triangle = {t.vertex(Vertex::A), t.vertex(Vertex::B), t.vertex(Vertex::C)};
    return serialize(spec).dump();
}

} // namespace

TEST_CASE("parse_spec examples") {
    SUBCASE("equilateral") {
        const ProblemSpec s = parse_spec(kEquilateralSpec);
        CHECK(s.mode == Mode::triangle);
        REQUIRE(s.triangle);
        CHECK((*s.triangle)[2].y == 0.866025403784);
        CHECK(s.solver == SolverConfig{});
        CHECK_FALSE(s.polygon);
    }
    SUBCASE("collinear vertices name the area") {
        const std::string text = R"({"mode":"triangle","triangle":[[0,0],[1,0],[2,0]]})";
        CHECK(error_code(text) == ErrorCode::degenerate_geometry);
        CHECK(error_message(text).find("area") != std::string::npos);
    }
    SUBCASE("fractions must sum to one") {
        CHECK(error_code(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[1,1],[0,1]],"rays":[90,210,330],
                            "targets":{"fractions":[0.5,0.3,0.3]}})") == ErrorCode::invalid_value);
    }
    SUBCASE("error codes") {
        CHECK(error_code("{\"mode\": \"triangle\", ") == ErrorCode::malformed_json);
        CHECK(error_code("[1, 2]") == ErrorCode::malformed_json);
        CHECK(error_code(R"({"triangle":[[0,0],[1,0],[0,1]]})") == ErrorCode::missing_field);
        CHECK(error_code(R"({"mode":"triangle"})") == ErrorCode::missing_field);
        CHECK(error_code(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[0,1]],"rays":[0,120,240]})") ==
              ErrorCode::missing_field);
        CHECK(error_code(R"({"mode":"hexagon"})") == ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0]]})") == ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,"1"]]})") == ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,1]],"rays":[0,120,240]})") ==
              ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,1]],"colour":"red"})") ==
              ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,1]],"solver":{"max_iters":0}})") ==
              ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,1]],"solver":{"max_iters":2.5}})") ==
              ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[1,1],[0,1]],"rays":[0,10,20],
                            "targets":{"fractions":[0.2,0.3,0.5]}})") == ErrorCode::invalid_value);
        CHECK(error_code(R"({"mode":"mass-partition","polygon":[[0,0],[2,0],[1,1],[2,2],[0,2]],"rays":[90,210,330],
                            "targets":{"fractions":[0.2,0.3,0.5]}})") == ErrorCode::degenerate_geometry);
        CHECK(error_code(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[2,0]],"rays":[90,210,330],
                            "targets":{"fractions":[0.2,0.3,0.5]}})") == ErrorCode::degenerate_geometry);
        CHECK(error_code(R"({"mode":"sweep","resolution":1})") == ErrorCode::invalid_value);
    }
    SUBCASE("defaults and overrides") {
        CHECK(parse_spec(R"({"mode":"sweep"})").resolution == kDefaultSweepResolution);
        const auto s = parse_spec(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0,1]],"solver":{"area_tol_rel":1e-10}})");
        CHECK(s.solver.area_tol_rel == 1e-10);
        CHECK(s.solver.max_iters == SolverConfig{}.max_iters);
        const auto m = parse_spec(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[1,1],[0,1]],"rays":[90,210,330],
                                      "targets":{"areas":[0.25,0.25,0.5]}})");
        CHECK(m.targets->kind == TargetKind::areas);
    }
}

TEST_CASE("round trip parse(serialize(spec)) == spec") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        ProblemSpec spec;
        spec.solver.area_tol_rel = std::pow(10.0, -14.0 + 6.0 * unit(rng));
        spec.solver.max_iters = 1 + static_cast<int>(unit(rng) * 500);
        spec.solver.fd_step_rel = unit(rng) * 1e-6 + 1e-12;
        switch (i % 3) {
        case 0: {
            const Triangle t = shapes::random_triangle(rng);
            const double s = u(rng);
            spec.triangle = {s * t.vertex(Vertex::A), s * t.vertex(Vertex::B), s * t.vertex(Vertex::C)};
            break;
        }
        case 1: {
            spec.mode = Mode::mass_partition;
            spec.polygon = shapes::random_convex_points(rng, 3 + i % 17);
            const double a0 = 360.0 * unit(rng);
            spec.rays_deg = {a0, a0 + 100.0 + 30.0 * unit(rng), a0 + 220.0 + 30.0 * unit(rng)};
            const double f0 = 0.1 + 0.3 * unit(rng), f1 = 0.1 + 0.3 * unit(rng);
            spec.targets = TargetSpec{TargetKind::fractions, {f0, f1, 1.0 - f0 - f1}};
            break;
        }
        default:
            spec.mode = Mode::sweep;
            spec.resolution = 2 + static_cast<int>(unit(rng) * 1000);
            break;
        }
        const std::string text = serialize(spec).dump();
        const ProblemSpec back = parse_spec(text);
        CHECK(back == spec);
        CHECK(serialize(back).dump() == text);
    }
}

TEST_CASE("run") {
    SUBCASE("equilateral") {
        const Report r = solve_text(kEquilateralSpec);
        REQUIRE(r.partition);
        CHECK(r.partition->point.x == Approx(0.5).epsilon(1e-10));
        CHECK(r.partition->point.y == Approx(0.866025403784 / 3.0).epsilon(1e-10));
        const auto j = to_json(r);
        for (const char* v : {"A", "B", "C"}) CHECK(std::abs(j["fractions"][v].get<double>() - 1.0 / 3.0) <= 1e-12);
        CHECK(j["classification"]["kind"] == "acute");
        CHECK(j["location"] == "interior");
        CHECK_FALSE(j.contains("timing"));
        CHECK(j["input"] == serialize(r.input));
    }
    SUBCASE("boundary isoceles") {
        const double h = 0.5 / std::sqrt(2.0);
        const Report r = solve_text(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0.5,)" + nlohmann::json(h).dump() + "]]}");
        const auto j = to_json(r);
        CHECK(j["classification"]["kind"] == "obtuse-boundary");
        CHECK(j["method"] == "closed-form");
        CHECK(std::abs(r.partition->point.y) <= 1e-12);
        CHECK(r.partition->point.x == Approx(0.5));
    }
    SUBCASE("mass partition") {
        const Report r = solve_text(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[1,1],[0,1]],"rays":[90,210,330],
                                        "targets":{"fractions":[0.2,0.3,0.5]}})");
        const auto j = to_json(r);
        CHECK(j["fractions"][0].get<double>() == Approx(0.2).epsilon(1e-10));
        CHECK(j["fractions"][2].get<double>() == Approx(0.5).epsilon(1e-10));
        CHECK(j["translation"][0].get<double>() == -j["apex"][0].get<double>());
        CHECK(j["regions"].size() == 3);
    }
    SUBCASE("timing only on request") {
        CHECK(run(parse_spec(kEquilateralSpec), true).elapsed_seconds.has_value());
        CHECK_FALSE(run(parse_spec(kEquilateralSpec)).elapsed_seconds.has_value());
    }
    SUBCASE("solver failure surfaces the report") {
        ProblemSpec spec = parse_spec(R"({"mode":"mass-partition","polygon":[[0,0],[1,0],[1,1],[0,1]],
                                          "rays":[90,210,330],"targets":{"fractions":[0.2,0.3,0.5]},
                                          "solver":{"fd_step_rel":2,"max_iters":1}})");
        CHECK_THROWS_AS(run(spec), SolverError);
    }
}

TEST_CASE("deterministic output") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 20; ++i) {
        const std::string text = triangle_spec(shapes::random_triangle(rng));
        const Report a = solve_text(text), b = solve_text(text);
        CHECK(dump(to_json(a)) == dump(to_json(b)));
        CHECK(emit_svg(a) == emit_svg(b));
    }
}

TEST_CASE("emit_svg") {
    SUBCASE("equilateral: three quadrangles") {
        const std::string svg = emit_svg(solve_text(kEquilateralSpec));
        const XmlCheck c = check_svg(svg);
        CHECK_MESSAGE(c.ok, c.error);
        REQUIRE(c.paths.size() == 4);
        for (std::size_t i = 0; i < 3; ++i) CHECK(path_vertices(c.paths[i]) == 4);
        CHECK(path_vertices(c.paths[3]) == 3);
        CHECK(svg.find("y-up") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") == std::string::npos);
        CHECK(c.elements.at("polyline") == 3);
        CHECK(c.elements.at("line") == 3);
        CHECK(c.elements.at("text") == 7);
    }
    SUBCASE("exterior case: dashed construction, point below AB") {
        const Report r = solve_text(R"({"mode":"triangle","triangle":[[0,0],[1,0],[0.5,0.05]]})");
        CHECK(r.partition->point.y < 0.0);
        const std::string svg = emit_svg(r);
        const XmlCheck c = check_svg(svg);
        CHECK_MESSAGE(c.ok, c.error);
        CHECK(svg.find("id=\"cut-lines\"") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") != std::string::npos);
        CHECK(c.elements.at("polyline") == 3);
    }
    SUBCASE("random triangles and mass partitions are well formed") {
        std::mt19937_64 rng(107);
        for (int i = 0; i < 50; ++i) {
            const XmlCheck c = check_svg(emit_svg(solve_text(triangle_spec(shapes::random_triangle(rng)))));
            CHECK_MESSAGE(c.ok, c.error);
        }
        const XmlCheck m = check_svg(emit_svg(solve_text(
            R"({"mode":"mass-partition","polygon":[[0,0],[3,0],[4,2],[1,3]],"rays":[10,150,250],"targets":{"areas":[2,2.5,3.5]}})")));
        CHECK_MESSAGE(m.ok, m.error);
        CHECK(m.paths.size() == 4);
    }
    SUBCASE("sweep reports have nothing to draw") {
        CHECK_THROWS_AS(emit_svg(solve_text(R"({"mode":"sweep","resolution":4})")), std::invalid_argument);
    }
}

TEST_CASE("sweep") {
    const auto rows = sweep(100);
    CHECK(rows.size() == 100u * 99u / 2u);
    SUBCASE("csv layout") {
        const std::string csv = sweep_csv(sweep(4));
        CHECK(csv.starts_with("angle_a_deg,angle_b_deg,kind,margin\n"));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 6);
        CHECK(csv.find("\n22.5,22.5,obtuse-exterior,") != std::string::npos);
    }
    SUBCASE("boundary crosses the diagonal at arctan(1/sqrt 2)") {
        const double crit = std::atan(1.0 / std::sqrt(2.0)) * 180.0 / std::numbers::pi;
        CHECK(crit == Approx(35.264389682754654));
        std::vector<SweepRow> diag;
        for (const SweepRow& r : rows) {
            if (r.angle_a_deg == r.angle_b_deg) diag.push_back(r);
        }
        int flips = 0;
        for (std::size_t k = 1; k < diag.size(); ++k) {
            const bool before = diag[k - 1].kind == Kind::obtuse_exterior;
            const bool after = diag[k].kind == Kind::obtuse_exterior;
            if (before != after) {
                ++flips;
                CHECK(diag[k - 1].angle_a_deg < crit);
                CHECK(diag[k].angle_a_deg > crit);
                CHECK(diag[k - 1].margin < 0.0);
                CHECK(diag[k].margin > 0.0);
            }
        }
        CHECK(flips == 1);
    }
    SUBCASE("margin changes sign once along rays through the angle simplex") {
        for (double phi = 35.0; phi <= 55.0; phi += 1.0) {
            const double c = std::cos(phi * std::numbers::pi / 180.0), s = std::sin(phi * std::numbers::pi / 180.0);
            const double t_max = 90.0 / (c + s);
            int changes = 0;
            double prev = 0.0;
            for (int k = 1; k < 400; ++k) {
                const double t = t_max * k / 400.0;
                const Triangle tri = shapes::from_angles(t * c * std::numbers::pi / 180.0, t * s * std::numbers::pi / 180.0);
                const double m = classify(tri).criterion_margin;
                if (m == 0.0) continue;
                if (prev != 0.0 && (m > 0.0) != (prev > 0.0)) ++changes;
                prev = m;
            }
            CHECK_MESSAGE(changes == 1, "phi = " << phi);
        }
    }
}
