// tripart: equal-area perpendicular partitions of triangles.
//
//   tripart solve  --input spec.json [--svg out.svg] [--tol 1e-12] [--output report.json] [--timing]
//   tripart sweep  --resolution N [--output sweep.csv]
//   tripart verify --input spec.json --point x,y [--tol 1e-9]
//
// exit: 0 ok, 2 bad input, 3 solver failure, 4 I/O error

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tripart/io.hpp"

using namespace tripart;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInput = 2, kSolver = 3, kIo = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int report_error(int status, const std::string& code, const std::string& message, const json& extra = nullptr) {
    json err = {{"error", {{"code", code}, {"message", message}}}};
    if (!extra.is_null()) err["error"]["solver_report"] = extra;
    std::cerr << err.dump() << "\n";
    return status;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("error writing standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw IoError("error writing '" + path + "'");
}

Point parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw SpecError(ErrorCode::invalid_value, "--point must be x,y");
    try {
        std::size_t used = 0;
        const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
        const double x = std::stod(xs, &used);
        if (used != xs.size()) throw std::invalid_argument(xs);
        const double y = std::stod(ys, &used);
        if (used != ys.size()) throw std::invalid_argument(ys);
        if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument(s);
        return {x, y};
    } catch (const std::logic_error&) {
        throw SpecError(ErrorCode::invalid_value, "--point must be two finite numbers x,y (got '" + s + "')");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equal-area perpendicular partitions of triangles"};
    app.require_subcommand(1);

    std::string input, svg_path, output, point_text;
    double tol = 0.0;
    double verify_tol = 1e-9;
    bool timing = false;
    int resolution = kDefaultSweepResolution;

    auto* solve = app.add_subcommand("solve", "Solve a problem spec and print a JSON report");
    solve->add_option("--input", input, "Problem spec (JSON)")->required();
    solve->add_option("--svg", svg_path, "Write a figure here");
    solve->add_option("--tol", tol, "Relative area tolerance (overrides solver.area_tol_rel)");
    solve->add_option("--output", output, "Report path (default stdout)");
    solve->add_flag("--timing", timing, "Include wall-clock time in the report");

    auto* sw = app.add_subcommand("sweep", "Classify a grid of triangle shapes, CSV out");
    sw->add_option("--resolution", resolution, "Samples per angle axis")->check(CLI::Range(2, 100000));
    sw->add_option("--output", output, "CSV path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Check a candidate point against a triangle spec");
    verify->add_option("--input", input, "Problem spec (JSON, triangle mode)")->required();
    verify->add_option("--point", point_text, "Candidate point x,y")->required();
    verify->add_option("--tol", verify_tol, "Relative area tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(kInput, "usage", e.what());
    }

    try {
        if (*sw) {
            write_out(output, sweep_csv(sweep(resolution)));
            return kOk;
        }

        ProblemSpec spec = parse_spec(read_file(input));

        if (*verify) {
            if (spec.mode != Mode::triangle) throw SpecError(ErrorCode::invalid_value, "verify needs a triangle spec");
            if (!(verify_tol > 0.0)) throw SpecError(ErrorCode::invalid_value, "--tol must be positive");
            const Point x = parse_point(point_text);
            const auto& v = *spec.triangle;
            const VerifyReport r = verify_partition(Triangle(v[0], v[1], v[2]), x, verify_tol);
            write_out("", dump(to_json(r, x, verify_tol)));
            return r.pass ? kOk : kSolver;
        }

        if (solve->count("--tol") > 0) {
            if (!(tol > 0.0)) throw SpecError(ErrorCode::invalid_value, "--tol must be positive");
            spec.solver.area_tol_rel = tol;
        }
        const Report report = run(spec, timing);
        if (!svg_path.empty()) {
            if (spec.mode == Mode::sweep) throw SpecError(ErrorCode::invalid_value, "--svg is not available in sweep mode");
            write_out(svg_path, emit_svg(report));
        }
        write_out(output, dump(to_json(report)));
        return kOk;
    } catch (const SpecError& e) {
        return report_error(kInput, to_string(e.code()), e.what());
    } catch (const SolverError& e) {
        return report_error(kSolver, "solver_failure", e.what(), to_json(e.report()));
    } catch (const IoError& e) {
        return report_error(kIo, "io_error", e.what());
    } catch (const std::invalid_argument& e) {
        return report_error(kInput, "invalid_value", e.what());
    } catch (const std::exception& e) {
        return report_error(kSolver, "internal", e.what());
    }
}
