#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "coconvex/piecewise.hpp"
#include "coconvex/shape.hpp"
#include "coconvex/simplex.hpp"
#include "coconvex/smoothness.hpp"

namespace coconvex {

// Best shape-constrained polynomial on a discretized grid: the polynomial,
// its max deviation over the grid, and the near-extremal grid points.
struct ApproxResult {
    Polynomial poly;
    double epsilon = 0.0;
    std::vector<double> active_points;
    int grid_size = 0;
};

namespace detail {

constexpr double kActiveTolScale = 1e-7;

// Chebyshev-Lobatto points over I (ascending) with the partition points
// inserted exactly.
inline std::vector<double> chebyshev_grid(const Interval& I, int count,
                                          const std::vector<double>& inserted) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count) + inserted.size());
    const double mid = I.midpoint(), half = 0.5 * I.width();
    for (int j = 0; j < count; ++j) {
        double theta = M_PI * static_cast<double>(count - 1 - j) / (count - 1);
        xs.push_back(mid + half * std::cos(theta));
    }
    xs.front() = I.lo;
    xs.back() = I.hi;
    for (double y : inserted) xs.push_back(y);
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs)
        if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
    return out;
}

}  // namespace detail

// Discretized minimax fit: minimize the max deviation from f on a
// Chebyshev grid over polynomials of degree <= n-1, with the oriented
// second-derivative sign constraints of the partition enforced at every
// grid point (none at the partition points themselves). Always feasible: a
// constant polynomial satisfies every sign constraint.
inline ApproxResult best_shape_approx(const PiecewiseFn& f, int n, const YPartition& Y,
                                      int grid_size, bool shape_constraints = true) {
    if (n < 1) throw Error("polynomial space needs n >= 1");
    if (grid_size < 4 * n) throw Error("grid_size must be at least 4n");
    if (!f.domain().contains(Y.interval))
        throw OutOfDomain(Y.interval.lo < f.domain().lo ? Y.interval.lo : Y.interval.hi);

    const std::vector<double> grid = detail::chebyshev_grid(Y.interval, grid_size, Y.points);
    const std::vector<double> bounds = Y.boundaries();
    const std::vector<int> sigma = sign_pattern(Y);

    // The program is posed in the scaled variable u = (x - mid)/half so the
    // monomial columns stay within [-1, 1] whatever the domain; the fitted
    // coefficients are mapped back to x afterwards.
    const double mid = Y.interval.midpoint();
    const double half = Y.interval.degenerate() ? 1.0 : 0.5 * Y.interval.width();
    auto to_u = [&](double x) { return (x - mid) / half; };

    // variables: q_0..q_{n-1} free, epsilon >= 0 (last)
    const std::size_t nv = static_cast<std::size_t>(n) + 1;
    LpProblem lp;
    lp.objective.assign(nv, 0.0);
    lp.objective.back() = 1.0;
    lp.free_var.assign(nv, true);
    lp.free_var.back() = false;

    std::vector<double> fvals(grid.size());
    std::vector<bool> usable(grid.size(), true);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        try {
            fvals[j] = f(grid[j]);
        } catch (const DivisionByZero&) {
            usable[j] = false;
        }
    }

    auto monomials = [&](double u) {
        std::vector<double> row(nv, 0.0);
        double pw = 1.0;
        for (int i = 0; i < n; ++i) {
            row[static_cast<std::size_t>(i)] = pw;
            pw *= u;
        }
        return row;
    };

    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!usable[j]) continue;
        std::vector<double> row = monomials(to_u(grid[j]));
        row.back() = -1.0;  // q(u) - eps <= f(x)
        lp.rows.push_back({row, fvals[j]});
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = -row[i];
        lp.rows.push_back({row, -fvals[j]});  // -q(u) - eps <= -f(x)
    }

    if (shape_constraints && n >= 3) {  // p'' vanishes identically for n < 3
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double x = grid[j];
            bool at_partition_point = false;
            for (double y : Y.points)
                if (x == y) at_partition_point = true;
            if (at_partition_point) continue;
            std::size_t sub = 0;
            while (sub + 2 < bounds.size() && x > bounds[sub + 1]) ++sub;
            // q''(u) and p''(x) differ by the positive factor half^2
            std::vector<double> row(nv, 0.0);
            double pw = 1.0;
            double u = to_u(x);
            for (int m = 2; m < n; ++m) {
                row[static_cast<std::size_t>(m)] =
                    -sigma[sub] * static_cast<double>(m) * (m - 1) * pw;
                pw *= u;
            }
            lp.rows.push_back({row, 0.0});  // -sigma * q''(u) <= 0
        }
    }

    LpSolution sol = solve_linear_program(lp);

    // p(x) = q((x - mid)/half), expanded back to the monomial basis in x
    Polynomial u_of_x({-mid / half, 1.0 / half});
    Polynomial p = Polynomial::zero();
    Polynomial u_pow = Polynomial::constant(1.0);
    for (int i = 0; i < n; ++i) {
        p = p + sol.x[static_cast<std::size_t>(i)] * u_pow;
        u_pow = u_pow * u_of_x;
    }

    ApproxResult res;
    res.poly = std::move(p);
    res.grid_size = static_cast<int>(grid.size());

    double eps = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (usable[j]) eps = std::max(eps, std::abs(fvals[j] - res.poly(grid[j])));
    res.epsilon = eps;
    const double act = detail::kActiveTolScale * (1.0 + eps);
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (usable[j] && std::abs(fvals[j] - res.poly(grid[j])) >= eps - act)
            res.active_points.push_back(grid[j]);
    return res;
}

// Plain minimax fit without sign constraints, same grid construction.
inline ApproxResult best_minimax_approx(const PiecewiseFn& f, int n, const Interval& I,
                                        int grid_size) {
    return best_shape_approx(f, n, YPartition({}, I), grid_size, false);
}

// Grid-doubling refinement: stop when the optimum moves by less than 1e-4.
inline ApproxResult best_shape_approx_auto(const PiecewiseFn& f, int n, const YPartition& Y) {
    int grid = std::max(65, 4 * n + 1);
    ApproxResult prev = best_shape_approx(f, n, Y, grid);
    while (grid < 4097) {
        grid = 2 * grid - 1;
        ApproxResult next = best_shape_approx(f, n, Y, grid);
        if (std::abs(next.epsilon - prev.epsilon) < 1e-4) return next;
        prev = std::move(next);
    }
    return prev;
}

// Constant extracted from a Jackson-type bound: c = deviation * n^2 / omega.
// omega = 0 forces deviation = 0 and c = 0 by convention.
struct JacksonReport {
    double deviation = 0.0;
    int n = 1;
    double omega = 0.0;
    double c = 0.0;
    bool degenerate = false;
};

inline JacksonReport jackson_constant(double deviation, int n, double omega) {
    if (deviation < 0.0 || omega < 0.0) throw Error("deviation and omega must be >= 0");
    if (n < 1) throw Error("n must be >= 1");
    if (omega == 0.0) {
        if (deviation > 0.0) throw InconsistentDegenerate();
        return {0.0, n, 0.0, 0.0, true};
    }
    double c = deviation * static_cast<double>(n) * static_cast<double>(n) / omega;
    return {deviation, n, omega, c, false};
}

// How the deviation side of the bound is measured.
struct PointwiseDeviation {
    double x0 = 0.0;
};
struct SupDeviationOver {
    Interval interval;
};
using DeviationKind = std::variant<PointwiseDeviation, SupDeviationOver>;

// How the modulus side of the bound is computed.
struct StandardRoute {
    ModulusSpec spec;
};
struct ReplicationRoute {
    ModulusSpec spec;
};
struct QuotedDeltaRoute {
    double delta = 0.0;
    Interval interval;
};
using ModulusRoute = std::variant<StandardRoute, ReplicationRoute, QuotedDeltaRoute>;

// Composes a deviation measurement, a modulus evaluation and the constant
// extraction into one report.
inline JacksonReport check_jackson_bound(const PiecewiseFn& f, const PiecewiseFn& fpp,
                                         const Polynomial& p, int n, const ModulusRoute& route,
                                         const DeviationKind& deviation,
                                         const SingularGuard& guard = {}) {
    double dev = 0.0;
    if (const auto* pw = std::get_if<PointwiseDeviation>(&deviation))
        dev = pointwise_deviation(f, p, pw->x0);
    else
        dev = sup_deviation(f, p, std::get<SupDeviationOver>(deviation).interval).value;

    double omega = 0.0;
    if (const auto* st = std::get_if<StandardRoute>(&route))
        omega = dt_modulus_standard(fpp, st->spec, guard);
    else if (const auto* re = std::get_if<ReplicationRoute>(&route))
        omega = dt_modulus_replication(fpp, re->spec, guard);
    else {
        const auto& q = std::get<QuotedDeltaRoute>(route);
        omega = apply_replication_weight(q.delta, q.interval);
    }
    return jackson_constant(dev, n, omega);
}

}  // namespace coconvex
