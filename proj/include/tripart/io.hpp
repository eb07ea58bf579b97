#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tripart/geometry.hpp"
#include "tripart/mass_partition.hpp"
#include "tripart/partitioner.hpp"

namespace tripart {

enum class Mode { triangle, mass_partition, sweep };
const char* to_string(Mode m);

enum class ErrorCode { malformed_json, missing_field, invalid_value, degenerate_geometry };
const char* to_string(ErrorCode c);

/// Input rejected while parsing or validating a problem specification.
class SpecError : public std::runtime_error {
public:
    SpecError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

enum class TargetKind { areas, fractions };

struct TargetSpec {
    TargetKind kind = TargetKind::fractions;
    std::array<double, 3> values{};
    friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

struct ProblemSpec {
    Mode mode = Mode::triangle;
    std::optional<std::array<Point, 3>> triangle;
    std::optional<std::vector<Point>> polygon;
    std::optional<std::array<double, 3>> rays_deg;
    std::optional<TargetSpec> targets;
    std::optional<int> resolution;
    SolverConfig solver;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

inline constexpr int kDefaultSweepResolution = 100;

/// Parses and validates a JSON problem specification, filling solver and
/// sweep defaults. Throws SpecError.
ProblemSpec parse_spec(std::string_view text);
ProblemSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json serialize(const ProblemSpec& spec);

struct SweepRow {
    double angle_a_deg = 0.0;
    double angle_b_deg = 0.0;
    Kind kind = Kind::acute;
    double margin = 0.0;
};

/// Classifies triangles on the cell-centred grid of base angles
/// A, B = (i + 1/2) * 180 / resolution with A + B < 180. Rows are ordered
/// by (i, j).
std::vector<SweepRow> sweep(int resolution);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct Report {
    ProblemSpec input;
    std::optional<Triangle> triangle;
    std::optional<PartitionSolution> partition;
    std::optional<ConvexPolygon> polygon;
    std::optional<TranslationSolution> translation;
    std::array<ConvexPolygon, 3> sector_regions;
    std::vector<SweepRow> sweep_rows;
    /// Wall-clock seconds; left empty unless timing was requested, so that
    /// reports stay byte-identical across runs.
    std::optional<double> elapsed_seconds;
};

/// Dispatches on the spec's mode. Throws SolverError and SpecError.
Report run(const ProblemSpec& spec, bool timing = false);

nlohmann::json to_json(const Report& report);
nlohmann::json to_json(const SolverReport& report);
nlohmann::json to_json(const VerifyReport& report, Point x, double tol);
/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& doc);

struct SvgOptions {
    int width = 640;
    int height = 480;
    double margin = 40.0;
};

/// Figure of a triangle or mass-partition report. Identical reports give
/// identical bytes.
std::string emit_svg(const Report& report, const SvgOptions& options = {});

} // namespace tripart
