#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "tripart/io.hpp"

namespace tripart {

namespace {

constexpr const char* kFills[3] = {"#f4a582", "#92c5de", "#b8e186"};
constexpr double kMarker = 8.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string area_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// world (y up) -> SVG user space (y down)
class Frame {
public:
    Frame(const std::vector<Point>& world, const SvgOptions& o) : height_(o.height) {
        Point lo = world.front(), hi = world.front();
        for (const Point& p : world) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
        const double w = std::max(hi.x - lo.x, 1e-300);
        const double h = std::max(hi.y - lo.y, 1e-300);
        scale_ = std::min((o.width - 2.0 * o.margin) / w, (o.height - 2.0 * o.margin) / h);
        offset_x_ = o.margin + 0.5 * ((o.width - 2.0 * o.margin) - scale_ * w) - scale_ * lo.x;
        offset_y_ = o.margin + 0.5 * ((o.height - 2.0 * o.margin) - scale_ * h) - scale_ * lo.y;
    }

    Point operator()(Point p) const { return {offset_x_ + scale_ * p.x, height_ - (offset_y_ + scale_ * p.y)}; }
    std::string xy(Point p) const {
        const Point s = (*this)(p);
        return num(s.x) + "," + num(s.y);
    }
    std::string comment() const {
        return "<!-- world coordinates are y-up; SVG x = " + num(offset_x_) + " + " + area_text(scale_) +
               " * x, SVG y = " + num(height_ - offset_y_) + " - " + area_text(scale_) + " * y -->\n";
    }

private:
    double height_;
    double scale_ = 1.0;
    double offset_x_ = 0.0;
    double offset_y_ = 0.0;
};

class Doc {
public:
    explicit Doc(const SvgOptions& o) : o_(o) {}

    void open(const Frame& f) {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + f.comment();
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(o_.width) +
                "\" height=\"" + std::to_string(o_.height) + "\" viewBox=\"0 0 " + std::to_string(o_.width) + " " +
                std::to_string(o_.height) + "\">\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(o_.width) + "\" height=\"" +
                std::to_string(o_.height) + "\" fill=\"white\"/>\n";
    }
    void polygon(const Frame& f, std::span<const Point> pts, const std::string& style) {
        if (pts.size() < 3) return;
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M " : " L ") + f.xy(pts[i]);
        out_ += "<path d=\"" + d + " Z\" " + style + "/>\n";
    }
    void line(Point a, Point b, const std::string& style) {
        out_ += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
                "\" " + style + "/>\n";
    }
    void polyline(const std::vector<Point>& pts, const std::string& style) {
        std::string p;
        for (std::size_t i = 0; i < pts.size(); ++i) p += (i == 0 ? "" : " ") + num(pts[i].x) + "," + num(pts[i].y);
        out_ += "<polyline points=\"" + p + "\" fill=\"none\" " + style + "/>\n";
    }
    void text(Point s, const std::string& body, const std::string& style) {
        out_ += "<text x=\"" + num(s.x) + "\" y=\"" + num(s.y) + "\" " + style + ">" + body + "</text>\n";
    }
    void circle(Point s, double r) {
        out_ += "<circle cx=\"" + num(s.x) + "\" cy=\"" + num(s.y) + "\" r=\"" + num(r) + "\" fill=\"black\"/>\n";
    }
    void raw(const std::string& s) { out_ += s; }
    std::string close() { return out_ + "</svg>\n"; }

private:
    SvgOptions o_;
    std::string out_;
};

const std::string kLabel = "font-family=\"serif\" font-style=\"italic\" font-size=\"16\" text-anchor=\"middle\"";
const std::string kNote = "font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\"";

// right-angle mark at screen point `foot`, sides along unit vectors u and v
void right_angle(Doc& doc, Point foot, Point u, Point v) {
    doc.polyline({foot + kMarker * u, foot + kMarker * (u + v), foot + kMarker * v},
                 "stroke=\"black\" stroke-width=\"0.8\"");
}

Point screen_dir(const Frame& f, Point from, Point to) { return normalized(f(to) - f(from)); }

void vertex_labels(Doc& doc, const Frame& f, std::span<const Point> pts, const char* const* names) {
    Point c{0.0, 0.0};
    for (const Point& p : pts) c = c + f(p);
    c = c / static_cast<double>(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point s = f(pts[i]);
        Point away = s - c;
        away = norm(away) > 0.0 ? normalized(away) : Point{0.0, -1.0};
        doc.text(s + 16.0 * away + Point{0.0, 5.0}, names[i], kLabel);
    }
}

void point_label(Doc& doc, Point s) {
    doc.circle(s, 3.0);
    doc.text(s + Point{12.0, -8.0}, "X<tspan font-size=\"11\" dy=\"4\">0</tspan>", kLabel);
}

void region_notes(Doc& doc, const Frame& f, const std::array<ConvexPolygon, 3>& regions, const char* const* names) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (regions[i].empty()) continue;
        doc.text(f(regions[i].centroid()) + Point{0.0, 4.0},
                 std::string(names[i]) + " = " + area_text(regions[i].area()), kNote);
    }
}

std::string triangle_svg(const Report& report, const SvgOptions& o) {
    const Triangle& t = *report.triangle;
    const PartitionSolution& s = *report.partition;
    const bool outside = s.classification.kind == Kind::obtuse_exterior;

    std::vector<Point> world{t.vertex(Vertex::A), t.vertex(Vertex::B), t.vertex(Vertex::C), s.point};
    std::array<Point, 3> feet;
    for (Side side : kSides) {
        feet[index(side)] = foot_of_perpendicular(s.point, t.side(side));
        world.push_back(feet[index(side)]);
    }
    const Frame f(world, o);
    Doc doc(o);
    doc.open(f);

    doc.raw("<g id=\"regions\" stroke=\"none\" fill-opacity=\"0.85\">\n");
    for (Vertex v : kVertices) {
        doc.polygon(f, s.regions[index(v)].vertices(), std::string("fill=\"") + kFills[index(v)] + "\"");
    }
    doc.raw("</g>\n");

    const auto tri = t.polygon();
    doc.polygon(f, tri.vertices(), "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");

    const std::string stroke = outside ? "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\""
                                       : "stroke=\"black\" stroke-width=\"1\"";
    doc.raw(std::string("<g id=\"") + (outside ? "cut-lines" : "perpendiculars") + "\">\n");
    for (Side side : kSides) {
        const Point foot = feet[index(side)];
        const Segment seg = t.side(side);
        const Point along = screen_dir(f, seg.a, seg.b);
        Point up;
        if (norm(f(s.point) - f(foot)) > 0.5) {
            doc.line(f(s.point), f(foot), stroke);
            up = screen_dir(f, foot, s.point);
        } else {
            up = screen_dir(f, foot, t.centroid());
            up = normalized(up - dot(up, along) * along);
        }
        right_angle(doc, f(foot), along, up);
    }
    doc.raw("</g>\n");

    static const char* const names[3] = {"A", "B", "C"};
    vertex_labels(doc, f, tri.vertices(), names);
    point_label(doc, f(s.point));
    static const char* const notes[3] = {"P(A)", "P(B)", "P(C)"};
    region_notes(doc, f, s.regions, notes);
    return doc.close();
}

std::string mass_svg(const Report& report, const SvgOptions& o) {
    const ConvexPolygon& poly = *report.polygon;
    const TranslationSolution& s = *report.translation;
    const SectorConfig cfg = config_from_degrees(*report.input.rays_deg);

    double reach = 0.0;
    for (const Point& p : poly.vertices()) reach = std::max(reach, distance(p, s.apex));
    std::vector<Point> world(poly.vertices().begin(), poly.vertices().end());
    world.push_back(s.apex);
    std::array<Point, 3> tips;
    for (std::size_t i = 0; i < 3; ++i) {
        tips[i] = s.apex + reach * cfg.directions()[i];
        world.push_back(tips[i]);
    }
    const Frame f(world, o);
    Doc doc(o);
    doc.open(f);

    doc.raw("<g id=\"regions\" stroke=\"none\" fill-opacity=\"0.85\">\n");
    for (std::size_t i = 0; i < 3; ++i) {
        doc.polygon(f, report.sector_regions[i].vertices(), std::string("fill=\"") + kFills[i] + "\"");
    }
    doc.raw("</g>\n");
    doc.polygon(f, poly.vertices(), "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
    doc.raw("<g id=\"rays\">\n");
    for (const Point& tip : tips) doc.line(f(s.apex), f(tip), "stroke=\"black\" stroke-width=\"1\"");
    doc.raw("</g>\n");
    point_label(doc, f(s.apex));
    static const char* const notes[3] = {"r1", "r2", "r3"};
    region_notes(doc, f, report.sector_regions, notes);
    return doc.close();
}

} // namespace

std::string emit_svg(const Report& report, const SvgOptions& options) {
    if (report.partition && report.triangle) return triangle_svg(report, options);
    if (report.translation && report.polygon) return mass_svg(report, options);
    throw std::invalid_argument("emit_svg: report has no solution to draw");
}

} // namespace tripart
