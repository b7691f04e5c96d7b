#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "coconvex/piecewise.hpp"
#include "coconvex/polynomial.hpp"

namespace coconvex {

// Change-of-convexity points: strictly increasing, strictly interior to
// the interval. An empty point list means plain convexity.
struct YPartition {
    std::vector<double> points;
    Interval interval;

    YPartition(std::vector<double> pts, Interval iv) : points(std::move(pts)), interval(iv) {
        for (std::size_t i = 0; i + 1 < points.size(); ++i)
            if (!(points[i] < points[i + 1]))
                throw Error("partition points must be strictly increasing");
        if (!points.empty() && !(interval.lo < points.front() && points.back() < interval.hi))
            throw Error("partition points must be interior to the interval");
    }

    // Subinterval boundaries: lo, y_1, ..., y_s, hi.
    std::vector<double> boundaries() const {
        std::vector<double> b;
        b.push_back(interval.lo);
        for (double y : points) b.push_back(y);
        b.push_back(interval.hi);
        return b;
    }
};

// Expected sign of the second derivative on each subinterval: the
// rightmost subinterval is convex (+1) and signs alternate leftward.
inline std::vector<int> sign_pattern(const YPartition& Y) {
    const std::size_t s = Y.points.size();
    std::vector<int> out(s + 1);
    for (std::size_t i = 0; i <= s; ++i) out[i] = ((s - i) % 2 == 0) ? +1 : -1;
    return out;
}

struct Counterexample {
    double x = 0.0;
    double y = 0.0;
    double lambda = 0.0;
    double lhs = 0.0;  // f at the combination point
    double rhs = 0.0;  // the lambda-combination of endpoint values
    int orientation = +1;  // +1 violated convexity, -1 violated concavity
};

struct ShapeVerdict {
    bool holds = true;
    std::optional<Counterexample> counterexample;
};

namespace detail {

constexpr double kSecantTol = 1e-9;

// R2 low-discrepancy sequence; values are in (0, 1) and deterministic.
inline std::pair<double, double> r2_pair(int j) {
    constexpr double a1 = 0.7548776662466927;  // 1/g, g the plastic number
    constexpr double a2 = 0.5698402909980532;  // 1/g^2
    double u = std::fmod(0.5 + a1 * (j + 1), 1.0);
    double v = std::fmod(0.5 + a2 * (j + 1), 1.0);
    return {u, v};
}

// Oriented secant check at one (x, y, lambda) triple. Returns a violation
// magnitude > 0 when the inequality fails; singular samples yield nullopt.
inline std::optional<double> secant_violation(const PiecewiseFn& f, double x, double y,
                                              double lambda, int orientation, double& lhs,
                                              double& rhs) {
    double mid = (1.0 - lambda) * x + lambda * y;
    try {
        lhs = f(mid);
        rhs = (1.0 - lambda) * f(x) + lambda * f(y);
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
    double v = orientation * (lhs - rhs);
    return v;
}

inline ShapeVerdict sampled_secant_test(const PiecewiseFn& f, const Interval& I, int pair_count,
                                        const std::vector<double>& lambda_grid, int orientation) {
    for (int j = 0; j < pair_count; ++j) {
        auto [u, v] = r2_pair(j);
        double x = I.lo + u * I.width();
        double y = I.lo + v * I.width();
        if (std::abs(x - y) < 1e-9 * std::max(1.0, I.width())) continue;
        for (double lambda : lambda_grid) {
            double lhs, rhs;
            auto viol = secant_violation(f, x, y, lambda, orientation, lhs, rhs);
            if (viol && *viol > kSecantTol)
                return {false, Counterexample{x, y, lambda, lhs, rhs, orientation}};
        }
    }
    return {true, std::nullopt};
}

}  // namespace detail

inline std::vector<double> default_lambda_grid() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

// Secant (lambda-combination) convexity test over deterministic
// low-discrepancy pairs. A "holds" verdict means no violation was found at
// this sampling resolution; a counterexample is a proof of failure.
inline ShapeVerdict secant_convexity_test(const PiecewiseFn& f, const Interval& I, int pair_count,
                                          const std::vector<double>& lambda_grid) {
    if (!f.domain().contains(I)) throw OutOfDomain(I.lo < f.domain().lo ? I.lo : I.hi);
    return detail::sampled_secant_test(f, I, pair_count, lambda_grid, +1);
}

// Sampled membership test for the coconvexity class over Y: each
// subinterval is checked with its expected orientation, pairs strictly
// inside the subinterval.
inline ShapeVerdict in_delta2(const PiecewiseFn& f, const YPartition& Y, int samples = 200) {
    if (!f.domain().contains(Y.interval))
        throw OutOfDomain(Y.interval.lo < f.domain().lo ? Y.interval.lo : Y.interval.hi);
    const std::vector<double> bounds = Y.boundaries();
    const std::vector<int> sigma = sign_pattern(Y);
    const std::vector<double> lambdas = default_lambda_grid();
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        Interval sub(bounds[i], bounds[i + 1]);
        ShapeVerdict v = detail::sampled_secant_test(f, sub, samples, lambdas, sigma[i]);
        if (!v.holds) return v;
    }
    return {true, std::nullopt};
}

// Exact convexity certificate for polynomials: min of p'' over I computed
// from the critical points of p''.
inline bool poly_convex_on(const Polynomial& p, const Interval& I, double tol = 1e-9) {
    Polynomial pdd = p.derivative(2);
    if (pdd.is_zero()) return true;
    return poly_min(pdd, I).value >= -tol;
}

namespace detail {

// Turn a certified p''-sign violation into a concrete secant
// counterexample by probing chords centered on the worst point.
inline std::optional<Counterexample> build_poly_counterexample(const Polynomial& p,
                                                               const Interval& sub, double worst_x,
                                                               int orientation) {
    PiecewiseFn f = PiecewiseFn::from_polynomial(p, sub);
    double margin = 1e-3 * sub.width();
    double cx = std::min(std::max(worst_x, sub.lo + margin), sub.hi - margin);
    double dmax = 0.9 * std::min(cx - sub.lo, sub.hi - cx);
    for (int halve = 0; halve < 8; ++halve) {
        double d = dmax / static_cast<double>(1 << halve);
        if (d <= 0.0) break;
        double lhs, rhs;
        auto viol = secant_violation(f, cx - d, cx + d, 0.5, orientation, lhs, rhs);
        if (viol && *viol > kSecantTol)
            return Counterexample{cx - d, cx + d, 0.5, lhs, rhs, orientation};
    }
    // wide chord through the worst point as a fallback
    double x = sub.lo + margin, y = sub.hi - margin;
    if (y > x) {
        double lambda = std::min(0.999, std::max(0.001, (cx - x) / (y - x)));
        double lhs, rhs;
        auto viol = secant_violation(f, x, y, lambda, orientation, lhs, rhs);
        if (viol && *viol > kSecantTol) return Counterexample{x, y, lambda, lhs, rhs, orientation};
    }
    return std::nullopt;
}

}  // namespace detail

// Certified membership test for polynomials: on each subinterval the
// oriented second derivative is minimized exactly over the critical points
// of p''. When a subinterval fails, the verdict carries a concrete secant
// counterexample.
inline ShapeVerdict in_delta2(const Polynomial& p, const YPartition& Y) {
    const std::vector<double> bounds = Y.boundaries();
    const std::vector<int> sigma = sign_pattern(Y);
    Polynomial pdd = p.derivative(2);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        Interval sub(bounds[i], bounds[i + 1]);
        if (pdd.is_zero()) continue;
        Extremum worst = sigma[i] > 0 ? poly_min(pdd, sub) : poly_max(pdd, sub);
        double oriented_min = sigma[i] * worst.value;
        if (oriented_min >= -detail::kSecantTol) continue;
        auto ce = detail::build_poly_counterexample(p, sub, worst.arg, sigma[i]);
        if (ce) return {false, ce};
        // violation too marginal to demonstrate with a chord
    }
    return {true, std::nullopt};
}

}  // namespace coconvex
