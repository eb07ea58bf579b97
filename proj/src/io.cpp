#include "tripart/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace tripart {

using nlohmann::json;

const char* to_string(Mode m) {
    switch (m) {
    case Mode::triangle: return "triangle";
    case Mode::mass_partition: return "mass-partition";
    case Mode::sweep: return "sweep";
    }
    return "?";
}

const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::malformed_json: return "malformed_json";
    case ErrorCode::missing_field: return "missing_field";
    case ErrorCode::invalid_value: return "invalid_value";
    case ErrorCode::degenerate_geometry: return "degenerate_geometry";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw SpecError(code, msg); }

const json& require(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) fail(ErrorCode::missing_field, std::string("missing required field '") + key + "'");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(ErrorCode::invalid_value, where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorCode::invalid_value, where + " must be finite");
    return x;
}

Point point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail(ErrorCode::invalid_value, where + " must be an [x, y] pair");
    return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

std::array<double, 3> triple(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) fail(ErrorCode::invalid_value, where + " must be an array of 3 numbers");
    return {number(v[0], where + "[0]"), number(v[1], where + "[1]"), number(v[2], where + "[2]")};
}

Mode parse_mode(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "triangle") return Mode::triangle;
        if (s == "mass-partition") return Mode::mass_partition;
        if (s == "sweep") return Mode::sweep;
    }
    fail(ErrorCode::invalid_value, "mode must be one of triangle, mass-partition, sweep");
}

SolverConfig parse_solver(const json& v) {
    if (!v.is_object()) fail(ErrorCode::invalid_value, "solver must be an object");
    SolverConfig cfg;
    for (const auto& [key, val] : v.items()) {
        const std::string where = "solver." + key;
        if (key == "area_tol_rel") {
            cfg.area_tol_rel = number(val, where);
        } else if (key == "fd_step_rel") {
            cfg.fd_step_rel = number(val, where);
        } else if (key == "kkm_target_diam_rel") {
            cfg.kkm_target_diam_rel = number(val, where);
        } else if (key == "max_iters" || key == "kkm_initial_grid") {
            if (!val.is_number_integer()) fail(ErrorCode::invalid_value, where + " must be an integer");
            const auto n = val.get<long long>();
            if (n < 1 || n > 1'000'000) fail(ErrorCode::invalid_value, where + " out of range");
            (key == "max_iters" ? cfg.max_iters : cfg.kkm_initial_grid) = static_cast<int>(n);
        } else {
            fail(ErrorCode::invalid_value, "unknown field '" + where + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(ErrorCode::invalid_value, e.what());
    }
    return cfg;
}

TargetSpec parse_targets(const json& v) {
    if (!v.is_object() || v.size() != 1) {
        fail(ErrorCode::invalid_value, "targets must be {\"fractions\": [...]} or {\"areas\": [...]}");
    }
    TargetSpec t;
    if (v.contains("fractions")) {
        t.kind = TargetKind::fractions;
        t.values = triple(v["fractions"], "targets.fractions");
    } else if (v.contains("areas")) {
        t.kind = TargetKind::areas;
        t.values = triple(v["areas"], "targets.areas");
    } else {
        fail(ErrorCode::invalid_value, "targets must be {\"fractions\": [...]} or {\"areas\": [...]}");
    }
    for (double x : t.values) {
        if (x < 0.0) fail(ErrorCode::invalid_value, "targets must be non-negative");
    }
    return t;
}

void check_fields(const json& doc, Mode mode) {
    static const std::set<std::string> known{"mode", "triangle", "polygon", "rays", "targets", "resolution", "solver"};
    std::set<std::string> allowed{"mode", "solver"};
    switch (mode) {
    case Mode::triangle: allowed.insert("triangle"); break;
    case Mode::mass_partition: allowed.insert({"polygon", "rays", "targets"}); break;
    case Mode::sweep: allowed.insert("resolution"); break;
    }
    for (const auto& [key, val] : doc.items()) {
        if (!known.contains(key)) fail(ErrorCode::invalid_value, "unknown field '" + key + "'");
        if (!allowed.contains(key)) {
            fail(ErrorCode::invalid_value,
                 "field '" + key + "' is not used in mode " + to_string(mode));
        }
    }
}

Targets make_targets(const TargetSpec& t, double total) {
    return t.kind == TargetKind::fractions ? Targets::from_fractions(t.values, total)
                                           : Targets::from_areas(t.values, total);
}

json to_json(Point p) { return json::array({p.x, p.y}); }

json to_json(const ConvexPolygon& poly) {
    json out = json::array();
    for (const Point& p : poly.vertices()) out.push_back(to_json(p));
    return out;
}

json to_json(const SolverConfig& cfg) {
    return {{"area_tol_rel", cfg.area_tol_rel},
            {"fd_step_rel", cfg.fd_step_rel},
            {"kkm_initial_grid", cfg.kkm_initial_grid},
            {"kkm_target_diam_rel", cfg.kkm_target_diam_rel},
            {"max_iters", cfg.max_iters}};
}

Triangle triangle_from_angles(double a_deg, double b_deg) {
    const double a = a_deg * std::numbers::pi / 180.0;
    const double b = b_deg * std::numbers::pi / 180.0;
    const double ac = std::sin(b) / std::sin(a + b);
    return Triangle({0.0, 0.0}, {1.0, 0.0}, {ac * std::cos(a), ac * std::sin(a)});
}

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

ProblemSpec parse_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail(ErrorCode::malformed_json, e.what());
    }
    return spec_from_json(doc);
}

ProblemSpec spec_from_json(const json& doc) {
    if (!doc.is_object()) fail(ErrorCode::malformed_json, "top-level JSON value must be an object");
    ProblemSpec spec;
    spec.mode = parse_mode(require(doc, "mode"));
    check_fields(doc, spec.mode);
    if (doc.contains("solver")) spec.solver = parse_solver(doc["solver"]);

    switch (spec.mode) {
    case Mode::triangle: {
        const json& t = require(doc, "triangle");
        if (!t.is_array() || t.size() != 3) fail(ErrorCode::invalid_value, "triangle must be an array of 3 points");
        spec.triangle = {point(t[0], "triangle[0]"), point(t[1], "triangle[1]"), point(t[2], "triangle[2]")};
        try {
            Triangle((*spec.triangle)[0], (*spec.triangle)[1], (*spec.triangle)[2]);
        } catch (const GeometryError& e) {
            fail(ErrorCode::degenerate_geometry, e.what());
        }
        break;
    }
    case Mode::mass_partition: {
        const json& p = require(doc, "polygon");
        if (!p.is_array()) fail(ErrorCode::invalid_value, "polygon must be an array of points");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(point(p[i], "polygon[" + std::to_string(i) + "]"));
        spec.polygon = pts;
        spec.rays_deg = triple(require(doc, "rays"), "rays");
        spec.targets = parse_targets(require(doc, "targets"));
        double area = 0.0;
        try {
            const auto poly = ConvexPolygon::from_points(pts);
            area = poly.area();
            const double diam = poly.diameter();
            if (!(area > 1e-12 * diam * diam)) {
                char msg[128];
                std::snprintf(msg, sizeof msg, "degenerate polygon: area %.6g is effectively zero", area);
                fail(ErrorCode::degenerate_geometry, msg);
            }
        } catch (const GeometryError& e) {
            fail(ErrorCode::degenerate_geometry, e.what());
        }
        try {
            config_from_degrees(*spec.rays_deg);
            make_targets(*spec.targets, area);
        } catch (const ConfigError& e) {
            fail(ErrorCode::invalid_value, e.what());
        }
        break;
    }
    case Mode::sweep: {
        spec.resolution = kDefaultSweepResolution;
        if (doc.contains("resolution")) {
            const json& r = doc["resolution"];
            if (!r.is_number_integer() || r.get<long long>() < 2 || r.get<long long>() > 100'000) {
                fail(ErrorCode::invalid_value, "resolution must be an integer in [2, 100000]");
            }
            spec.resolution = r.get<int>();
        }
        break;
    }
    }
    return spec;
}

json serialize(const ProblemSpec& spec) {
    json out = {{"mode", to_string(spec.mode)}, {"solver", to_json(spec.solver)}};
    if (spec.triangle) {
        out["triangle"] = json::array();
        for (const Point& p : *spec.triangle) out["triangle"].push_back(to_json(p));
    }
    if (spec.polygon) {
        out["polygon"] = json::array();
        for (const Point& p : *spec.polygon) out["polygon"].push_back(to_json(p));
    }
    if (spec.rays_deg) out["rays"] = *spec.rays_deg;
    if (spec.targets) {
        out["targets"] = {{spec.targets->kind == TargetKind::fractions ? "fractions" : "areas", spec.targets->values}};
    }
    if (spec.resolution) out["resolution"] = *spec.resolution;
    return out;
}

std::vector<SweepRow> sweep(int resolution) {
    if (resolution < 2) throw std::invalid_argument("sweep resolution must be at least 2");
    std::vector<SweepRow> rows;
    const double step = 180.0 / resolution;
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; i + j + 1 < resolution; ++j) {
            SweepRow row;
            row.angle_a_deg = (i + 0.5) * step;
            row.angle_b_deg = (j + 0.5) * step;
            const Classification c = classify(triangle_from_angles(row.angle_a_deg, row.angle_b_deg));
            row.kind = c.kind;
            row.margin = c.criterion_margin;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "angle_a_deg,angle_b_deg,kind,margin\n";
    for (const SweepRow& r : rows) {
        out += fmt17(r.angle_a_deg) + ',' + fmt17(r.angle_b_deg) + ',' + to_string(r.kind) + ',' + fmt17(r.margin) +
               '\n';
    }
    return out;
}

Report run(const ProblemSpec& spec, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.input = spec;
    switch (spec.mode) {
    case Mode::triangle: {
        if (!spec.triangle) throw SpecError(ErrorCode::missing_field, "missing required field 'triangle'");
        const auto& v = *spec.triangle;
        report.triangle = Triangle(v[0], v[1], v[2]);
        report.partition = equal_partition(*report.triangle, spec.solver);
        break;
    }
    case Mode::mass_partition: {
        if (!spec.polygon || !spec.rays_deg || !spec.targets) {
            throw SpecError(ErrorCode::missing_field, "mass-partition needs polygon, rays and targets");
        }
        report.polygon = ConvexPolygon::from_points(*spec.polygon);
        const SectorConfig cfg = config_from_degrees(*spec.rays_deg);
        report.translation =
            solve_translation(*report.polygon, cfg, make_targets(*spec.targets, report.polygon->area()), spec.solver);
        report.sector_regions = sector_polygons(*report.polygon, cfg, report.translation->apex);
        break;
    }
    case Mode::sweep:
        report.sweep_rows = sweep(spec.resolution.value_or(kDefaultSweepResolution));
        break;
    }
    if (timing) report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

json to_json(const SolverReport& r) {
    return {{"method", to_string(r.method)},     {"iterations", r.iterations},
            {"restarts", r.restarts},            {"residual_history", r.residual_history},
            {"verified", r.verified},            {"best_point", to_json(r.best_point)},
            {"best_residual", r.best_residual},  {"message", r.message}};
}

json to_json(const VerifyReport& r, Point x, double tol) {
    return {{"point", to_json(x)},
            {"tolerance", tol},
            {"areas", {{"A", r.areas.at_a}, {"B", r.areas.at_b}, {"C", r.areas.at_c}}},
            {"deviation", r.deviation},
            {"location", to_string(r.location)},
            {"region_vertex_counts", {{"A", r.vertex_counts[0]}, {"B", r.vertex_counts[1]}, {"C", r.vertex_counts[2]}}},
            {"pass", r.pass}};
}

json to_json(const Report& report) {
    json out = {{"mode", to_string(report.input.mode)}, {"input", serialize(report.input)}};
    if (report.partition) {
        const Triangle& t = *report.triangle;
        const PartitionSolution& s = *report.partition;
        const double area = t.area();
        const auto& c = s.classification;
        out["triangle"] = {{"vertices", {to_json(t.vertex(Vertex::A)), to_json(t.vertex(Vertex::B)),
                                         to_json(t.vertex(Vertex::C))}},
                           {"area", area},
                           {"diameter", t.diameter()}};
        out["classification"] = {{"kind", to_string(c.kind)},
                                 {"obtuse_vertex", c.obtuse_vertex ? json(to_string(*c.obtuse_vertex)) : json(nullptr)},
                                 {"criterion_margin", c.criterion_margin}};
        const int loc = t.locate(s.point, 1e-7 * t.diameter());
        out["point"] = to_json(s.point);
        out["location"] = to_string(loc > 0 ? Location::interior : (loc == 0 ? Location::boundary : Location::exterior));
        out["areas"] = {{"A", s.areas.at_a}, {"B", s.areas.at_b}, {"C", s.areas.at_c}};
        out["fractions"] = {{"A", s.areas.at_a / area}, {"B", s.areas.at_b / area}, {"C", s.areas.at_c / area}};
        out["residual"] = s.residual;
        out["method"] = to_string(s.method);
        out["regions"] = {{"A", to_json(s.regions[0])}, {"B", to_json(s.regions[1])}, {"C", to_json(s.regions[2])}};
        out["solver"] = to_json(s.report);
    }
    if (report.translation) {
        const TranslationSolution& s = *report.translation;
        const double area = report.polygon->area();
        out["polygon"] = {{"vertices", to_json(*report.polygon)}, {"area", area}};
        out["apex"] = to_json(s.apex);
        out["translation"] = to_json(s.translation);
        out["areas"] = s.achieved;
        out["fractions"] = {s.achieved[0] / area, s.achieved[1] / area, s.achieved[2] / area};
        out["residual"] = s.residual;
        out["method"] = to_string(s.report.method);
        out["regions"] = {to_json(report.sector_regions[0]), to_json(report.sector_regions[1]),
                          to_json(report.sector_regions[2])};
        out["solver"] = to_json(s.report);
    }
    if (report.input.mode == Mode::sweep) {
        json rows = json::array();
        for (const SweepRow& r : report.sweep_rows) {
            rows.push_back({{"angle_a_deg", r.angle_a_deg},
                            {"angle_b_deg", r.angle_b_deg},
                            {"kind", to_string(r.kind)},
                            {"margin", r.margin}});
        }
        out["samples"] = std::move(rows);
    }
    if (report.elapsed_seconds) out["timing"] = {{"seconds", *report.elapsed_seconds}};
    return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace tripart
