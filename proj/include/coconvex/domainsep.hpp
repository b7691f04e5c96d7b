#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "coconvex/approx.hpp"
#include "coconvex/piecewise.hpp"
#include "coconvex/polynomial.hpp"
#include "coconvex/shape.hpp"

namespace coconvex {

// Closure of {x in D : x^2 < c}: a compact neighborhood of x_o inside D.
inline Interval compact_neighborhood(const Interval& D, double x_o, double c) {
    if (!(c > 0.0)) throw Error("c must be positive");
    if (!D.contains(x_o) || !(x_o * x_o < c))
        throw NotInteriorPoint("x_o must lie in D with x_o^2 < c");
    double r = std::sqrt(c);
    return Interval(std::max(D.lo, -r), std::min(D.hi, r));
}

struct WitnessPoint {
    double t = 0.0;
    double margin = 0.0;  // |p(t)| - sup over D, strictly positive
};

// Everything needed to run the Jackson-bound leg of a domain check.
struct JacksonConfig {
    ModulusRoute route;
    DeviationKind deviation;
    std::optional<int> n_override;
    SingularGuard guard;
};

struct DcpReport {
    bool prop1_compact = false;  // D compact and p convex throughout D
    std::optional<WitnessPoint> prop2_witness;
    double sup_over_domain = 0.0;
    JacksonReport prop3;
    bool overall = false;
};

namespace detail {

constexpr double kSeparationTol = 1e-9;
constexpr int kWitnessSearchGrid = 1001;
constexpr double kWitnessSearchDilation = 3.0;

inline int degree_based_n(const Polynomial& p) { return std::max(1, p.degree() + 1); }

}  // namespace detail

// Domain-of-convex-polynomial check: (1) D compact and p convex on it,
// (2) an exterior point where |p| strictly beats the sup over D,
// (3) the Jackson-type bound assembled into a constant.
// When no witness is supplied, candidates are scanned on a grid over D
// dilated threefold about its midpoint.
inline DcpReport check_dcp(const Polynomial& p, const Interval& D,
                           std::optional<double> t_witness, const PiecewiseFn& f,
                           const PiecewiseFn& fpp, const JacksonConfig& cfg) {
    DcpReport rep;
    rep.prop1_compact = poly_convex_on(p, D);
    rep.sup_over_domain = sup_abs(p, D).value;

    auto try_witness = [&](double t) -> std::optional<WitnessPoint> {
        if (D.contains(t)) return std::nullopt;
        double margin = std::abs(p(t)) - rep.sup_over_domain;
        if (margin > detail::kSeparationTol) return WitnessPoint{t, margin};
        return std::nullopt;
    };

    if (t_witness) {
        rep.prop2_witness = try_witness(*t_witness);
    } else {
        double half = 0.5 * D.width() * detail::kWitnessSearchDilation;
        double mid = D.midpoint();
        for (int j = 0; j < detail::kWitnessSearchGrid && !rep.prop2_witness; ++j) {
            double t = mid - half + 2.0 * half * static_cast<double>(j) /
                                        (detail::kWitnessSearchGrid - 1);
            rep.prop2_witness = try_witness(t);
        }
    }

    int n = cfg.n_override.value_or(detail::degree_based_n(p));
    rep.prop3 = check_jackson_bound(f, fpp, p, n, cfg.route, cfg.deviation, cfg.guard);
    rep.overall = rep.prop1_compact && rep.prop2_witness.has_value();
    return rep;
}

struct DccpDeclaredRow {
    double y = 0.0;
    double abs_value = 0.0;  // |p(y)|
    bool within_half = false;
};

struct DccpVerified {
    std::vector<double> inflections;      // recomputed from p''
    std::vector<bool> within_half;        // |p| <= 1/2 at each, same order
    bool match_with_declared = false;     // recomputed == declared within 1e-6
};

struct DccpReport {
    bool prop1_changes_convexity = false;
    std::vector<DccpDeclaredRow> prop2_declared;
    DccpVerified prop2_verified;
    JacksonReport prop3;
    bool overall_declared = false;
    bool overall_verified = false;
};

// Domain-of-coconvex-polynomial check, run twice over property 2: once
// with the declared partition points taken at face value, once with the
// inflection points recomputed from p''.
inline DccpReport check_dccp(const Polynomial& p, const Interval& D, const YPartition& Y_declared,
                             const PiecewiseFn& f, const PiecewiseFn& fpp,
                             const JacksonConfig& cfg) {
    constexpr double kHalfTol = 1e-12;
    constexpr double kMatchTol = 1e-6;
    DccpReport rep;

    std::vector<double> infl = inflection_points(p, D);
    rep.prop1_changes_convexity = !infl.empty();

    bool declared_ok = true;
    for (double y : Y_declared.points) {
        double v = std::abs(p(y));
        bool ok = v <= 0.5 + kHalfTol;
        declared_ok = declared_ok && ok;
        rep.prop2_declared.push_back({y, v, ok});
    }

    rep.prop2_verified.inflections = infl;
    bool verified_ok = true;
    for (double y : infl) {
        bool ok = std::abs(p(y)) <= 0.5 + kHalfTol;
        verified_ok = verified_ok && ok;
        rep.prop2_verified.within_half.push_back(ok);
    }
    bool match = infl.size() == Y_declared.points.size();
    for (std::size_t i = 0; match && i < infl.size(); ++i)
        match = std::abs(infl[i] - Y_declared.points[i]) <= kMatchTol;
    rep.prop2_verified.match_with_declared = match;

    int n = cfg.n_override.value_or(detail::degree_based_n(p));
    rep.prop3 = check_jackson_bound(f, fpp, p, n, cfg.route, cfg.deviation, cfg.guard);

    rep.overall_declared = rep.prop1_changes_convexity && declared_ok;
    rep.overall_verified = rep.prop1_changes_convexity && verified_ok;
    return rep;
}

struct SeparationVerdict {
    bool holds = false;
    std::optional<double> b;  // strict-separation level, midpoint choice
    double inf_lhs = 0.0;
    double sup_rhs = 0.0;
    std::vector<double> failed_ts;  // all-t mode: grid points that failed
};

// Level alpha supports p on D at the witness point: p stays at or above
// alpha everywhere on D (removing one point cannot lower the infimum of a
// continuous function, so the whole interval is checked).
inline SeparationVerdict supporting_hyperplane(const Polynomial& p, const Interval& D,
                                               double x_hat, double alpha) {
    if (!D.contains(x_hat))
        throw WitnessOutsideDomain("witness point must belong to the domain");
    SeparationVerdict v;
    v.inf_lhs = poly_min(p, D).value;
    v.sup_rhs = alpha;
    v.holds = v.inf_lhs >= alpha - detail::kSeparationTol;
    return v;
}

// Strict separation of D from an exterior point x: a level b with
// sup_D p < b < p(x); b is the midpoint when one exists.
inline SeparationVerdict strictly_separates(const Polynomial& p, const Interval& D, double x) {
    if (D.contains(x)) throw PointInsideDomain("x must lie outside the domain");
    SeparationVerdict v;
    v.sup_rhs = poly_max(p, D).value;
    v.inf_lhs = p(x);
    if (v.sup_rhs < v.inf_lhs) {
        v.holds = true;
        v.b = 0.5 * (v.sup_rhs + v.inf_lhs);
    }
    return v;
}

namespace detail {

inline std::pair<double, double> scaled_range(double w, double lo, double hi) {
    // image of [lo, hi] under multiplication by w
    return w >= 0.0 ? std::pair{w * lo, w * hi} : std::pair{w * hi, w * lo};
}

}  // namespace detail

// Strong separation of two polynomial domains: inf p over D1 strictly
// above sup q over D2.
inline SeparationVerdict strongly_separated(const Polynomial& p, const Interval& D1,
                                            const Polynomial& q, const Interval& D2) {
    SeparationVerdict v;
    v.inf_lhs = poly_min(p, D1).value;
    v.sup_rhs = poly_max(q, D2).value;
    v.holds = v.inf_lhs > v.sup_rhs;
    return v;
}

// Weighted variant: both sides are rescaled by hbar(t). With a fixed t the
// comparison runs once; with all_t the inequality must hold at every point
// of a 101-point grid over [0, 1], and the verdict reports the worst
// margin plus every failing t.
inline SeparationVerdict strongly_separated(const Polynomial& p, const Interval& D1,
                                            const Polynomial& q, const Interval& D2,
                                            const PiecewiseFn& hbar, std::optional<double> t) {
    const double min_p = poly_min(p, D1).value, max_p = poly_max(p, D1).value;
    const double min_q = poly_min(q, D2).value, max_q = poly_max(q, D2).value;

    auto at = [&](double tv) {
        double w = hbar(tv);
        auto [inf_lhs, _1] = detail::scaled_range(w, min_p, max_p);
        auto [_2, sup_rhs] = detail::scaled_range(w, min_q, max_q);
        return std::pair{inf_lhs, sup_rhs};
    };

    SeparationVerdict v;
    if (t) {
        auto [inf_lhs, sup_rhs] = at(*t);
        v.inf_lhs = inf_lhs;
        v.sup_rhs = sup_rhs;
        v.holds = inf_lhs > sup_rhs;
        return v;
    }

    constexpr int kTGrid = 101;
    v.holds = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kTGrid; ++j) {
        double tv = static_cast<double>(j) / (kTGrid - 1);
        auto [inf_lhs, sup_rhs] = at(tv);
        double margin = inf_lhs - sup_rhs;
        if (margin < worst_margin) {
            worst_margin = margin;
            v.inf_lhs = inf_lhs;
            v.sup_rhs = sup_rhs;
        }
        if (!(inf_lhs > sup_rhs)) {
            v.holds = false;
            v.failed_ts.push_back(tv);
        }
    }
    return v;
}

}  // namespace coconvex
