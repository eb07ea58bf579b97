// Damped Newton for "three areas hit their targets" systems in the plane.
// Shared by the triangle partitioner and the translation solver.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tripart/geometry.hpp"

namespace tripart::detail {

/// Three region areas as a function of the apex, and what they should be.
/// Areas and targets have the same total.
struct AreaSystem {
    std::function<std::array<double, 3>(Point)> areas;
    std::array<double, 3> targets{};

    std::array<double, 3> deviations(Point x) const;
};

struct NewtonOutcome {
    Point x;
    double residual = 0.0;
    int iterations = 0;
    int restarts = 0;
    std::vector<double> history;
    bool converged = false;
};

double max_abs(const std::array<double, 3>& d);

/// Newton on the first two components, forward-difference Jacobian with
/// step `fd_step`, residual backtracking of at most 30 halvings. A trial
/// that empties a region with a positive target is rejected. Stops on
/// residual <= tol, stagnation, or `max_iters`.
NewtonOutcome damped_newton(const AreaSystem& sys, Point seed, double tol, double fd_step, int max_iters);

/// damped_newton from `seed`; on failure, coarse-to-fine grid search over
/// [lo, hi] and Newton from the best nodes, zooming in on each round.
NewtonOutcome newton_with_restarts(const AreaSystem& sys, Point seed, double tol, double fd_step, int max_iters,
                                   Point lo, Point hi);

} // namespace tripart::detail
