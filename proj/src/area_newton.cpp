#include "area_newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tripart::detail {

namespace {

constexpr int kMaxHalvings = 30;
constexpr int kGridNodes = 32;
constexpr int kGridRounds = 8;
constexpr int kSeedsPerRound = 4;

} // namespace

double max_abs(const std::array<double, 3>& d) {
    return std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
}

std::array<double, 3> AreaSystem::deviations(Point x) const {
    const auto a = areas(x);
    return {a[0] - targets[0], a[1] - targets[1], a[2] - targets[2]};
}

NewtonOutcome damped_newton(const AreaSystem& sys, Point seed, double tol, double fd_step, int max_iters) {
    const auto dev = [&](Point x) { return sys.deviations(x); };
    // region i has collapsed to nothing while it should not
    const auto emptied = [&](const std::array<double, 3>& d, std::size_t i) {
        return sys.targets[i] > 0.0 && d[i] + sys.targets[i] <= 0.0;
    };
    NewtonOutcome out;
    out.x = seed;
    std::array<double, 3> g = dev(seed);
    out.residual = max_abs(g);
    out.history.push_back(out.residual);

    while (out.residual > tol && out.iterations < max_iters) {
        ++out.iterations;
        const std::array<double, 3> gx = dev(out.x + Point{fd_step, 0.0});
        const std::array<double, 3> gy = dev(out.x + Point{0.0, fd_step});
        const double j00 = (gx[0] - g[0]) / fd_step, j01 = (gy[0] - g[0]) / fd_step;
        const double j10 = (gx[1] - g[1]) / fd_step, j11 = (gy[1] - g[1]) / fd_step;
        const double det = j00 * j11 - j01 * j10;
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
        const Point step{-(j11 * g[0] - j01 * g[1]) / det, -(-j10 * g[0] + j00 * g[1]) / det};
        if (!is_finite(step)) break;

        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
            const Point trial = out.x + lambda * step;
            const std::array<double, 3> gt = dev(trial);
            const double rt = max_abs(gt);
            bool collapses = false;
            for (std::size_t i = 0; i < 3; ++i) collapses = collapses || (emptied(gt, i) && !emptied(g, i));
            if (rt < out.residual && !collapses) {
                out.x = trial;
                g = gt;
                out.residual = rt;
                improved = true;
                break;
            }
        }
        out.history.push_back(out.residual);
        if (!improved) break;
    }
    out.converged = out.residual <= tol;
    return out;
}

NewtonOutcome newton_with_restarts(const AreaSystem& sys, Point seed, double tol, double fd_step, int max_iters,
                                   Point lo, Point hi) {
    NewtonOutcome best = damped_newton(sys, seed, tol, fd_step, max_iters);
    if (best.converged) return best;

    int total_iters = best.iterations;
    std::vector<double> history = best.history;
    for (int round = 0; round < kGridRounds && !best.converged; ++round) {
        // rank nodes by the sum of absolute deviations; the max plateaus
        // wherever one region is empty
        std::vector<std::pair<double, Point>> nodes;
        nodes.reserve((kGridNodes + 1) * (kGridNodes + 1));
        for (int i = 0; i <= kGridNodes; ++i) {
            for (int j = 0; j <= kGridNodes; ++j) {
                const Point p{lo.x + (hi.x - lo.x) * i / kGridNodes, lo.y + (hi.y - lo.y) * j / kGridNodes};
                const auto d = sys.deviations(p);
                nodes.emplace_back(std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]), p);
            }
        }
        std::partial_sort(nodes.begin(), nodes.begin() + kSeedsPerRound, nodes.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int k = 0; k < kSeedsPerRound && !best.converged; ++k) {
            NewtonOutcome attempt = damped_newton(sys, nodes[k].second, tol, fd_step, max_iters);
            total_iters += attempt.iterations;
            history.insert(history.end(), attempt.history.begin(), attempt.history.end());
            if (attempt.residual < best.residual) best = attempt;
        }
        best.restarts = round + 1;
        // zoom on the best node, two grid spacings each way
        const Point half{2.0 * (hi.x - lo.x) / kGridNodes, 2.0 * (hi.y - lo.y) / kGridNodes};
        lo = nodes.front().second - half;
        hi = nodes.front().second + half;
    }
    best.iterations = total_iters;
    best.history = std::move(history);
    return best;
}

} // namespace tripart::detail
