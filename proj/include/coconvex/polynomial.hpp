#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "coconvex/errors.hpp"

namespace coconvex {

// Closed bounded interval [lo, hi]. Both ends finite, lo <= hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
            throw Error("invalid interval [" + std::to_string(lo_) + ", " +
                        std::to_string(hi_) + "]");
    }

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool degenerate() const { return lo == hi; }
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

// Dense univariate polynomial, coefficients in ascending powers.
// Trailing zero coefficients are trimmed on construction; the zero
// polynomial is the empty coefficient list and reports degree() == -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(double c) { return Polynomial({c}); }

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    // Horner evaluation.
    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative(int order = 1) const {
        if (order < 0) throw Error("derivative order must be >= 0");
        std::vector<double> c = coeffs_;
        for (int k = 0; k < order; ++k) {
            if (c.size() <= 1) {
                c.clear();
                break;
            }
            std::vector<double> d(c.size() - 1);
            for (std::size_t i = 1; i < c.size(); ++i)
                d[i - 1] = c[i] * static_cast<double>(i);
            c = std::move(d);
        }
        return Polynomial(std::move(c));
    }

private:
    std::vector<double> coeffs_;
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs().size(), b.coeffs().size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
    return Polynomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs().size(), b.coeffs().size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] -= b.coeffs()[i];
    return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial::zero();
    std::vector<double> c(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(std::move(c));
}

inline Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c = p.coeffs();
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
}

namespace detail {

constexpr int kRootGridPoints = 4097;       // bracketing grid resolution
constexpr double kBisectWidth = 1e-13;      // bisection stops below this width
constexpr double kRootMergeTol = 1e-10;     // duplicates closer than this merge

// Upper bound for |p| on I, used to scale the near-zero test that detects
// even-multiplicity roots at critical points.
inline double abs_bound(const Polynomial& p, const Interval& I) {
    double r = std::max({std::abs(I.lo), std::abs(I.hi), 1.0});
    double b = 0.0, pw = 1.0;
    for (double c : p.coeffs()) {
        b += std::abs(c) * pw;
        pw *= r;
    }
    return std::max(b, 1.0);
}

inline double bisect_root(const Polynomial& p, double a, double b, double fa) {
    for (int it = 0; it < 200 && (b - a) > kBisectWidth; ++it) {
        double m = 0.5 * (a + b);
        double fm = p(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    // Newton polish, accepted only while it stays bracketed and improves
    double x = 0.5 * (a + b);
    Polynomial dp = p.derivative();
    for (int it = 0; it < 2; ++it) {
        double d = dp(x);
        if (d == 0.0) break;
        double nx = x - p(x) / d;
        if (!(nx >= a && nx <= b) || std::abs(p(nx)) > std::abs(p(x))) break;
        x = nx;
    }
    return x;
}

inline void merge_close_roots(std::vector<double>& roots, const Polynomial& p) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    std::size_t i = 0;
    while (i < roots.size()) {
        std::size_t j = i;
        while (j + 1 < roots.size() && roots[j + 1] - roots[j] <= kRootMergeTol) ++j;
        // keep the cluster member with the smallest residual
        double best = roots[i];
        for (std::size_t k = i; k <= j; ++k)
            if (std::abs(p(roots[k])) < std::abs(p(best))) best = roots[k];
        merged.push_back(best);
        i = j + 1;
    }
    roots = std::move(merged);
}

}  // namespace detail

// All real roots of p inside I, each to ~1e-12 absolute accuracy.
// Sign changes on a fine grid are refined by bisection; even-multiplicity
// roots are picked up by checking p at the critical points of p.
inline std::vector<double> real_roots(const Polynomial& p, const Interval& I) {
    if (p.is_zero()) throw IdenticallyZero();
    if (p.degree() == 0) return {};
    if (p.degree() == 1) {
        double r = -p.coeffs()[0] / p.coeffs()[1];
        if (I.contains(r)) return {r};
        return {};
    }

    std::vector<double> roots;
    const int n = detail::kRootGridPoints;
    const double w = I.width();
    double prev_x = I.lo, prev_v = p(I.lo);
    if (prev_v == 0.0) roots.push_back(prev_x);
    for (int i = 1; i < n; ++i) {
        double x = I.lo + w * static_cast<double>(i) / (n - 1);
        double v = p(x);
        if (v == 0.0) {
            roots.push_back(x);
        } else if (prev_v != 0.0 && (prev_v < 0.0) != (v < 0.0)) {
            roots.push_back(detail::bisect_root(p, prev_x, x, prev_v));
        }
        prev_x = x;
        prev_v = v;
    }

    // even-multiplicity roots: p vanishes at a critical point
    const double near_zero = 1e-11 * detail::abs_bound(p, I);
    for (double c : real_roots(p.derivative(), I))
        if (std::abs(p(c)) <= near_zero) roots.push_back(c);

    detail::merge_close_roots(roots, p);
    return roots;
}

struct Extremum {
    double value = 0.0;
    double arg = 0.0;
};

namespace detail {

// Critical points of p in I plus the endpoints, ascending.
inline std::vector<double> extremum_candidates(const Polynomial& p, const Interval& I) {
    std::vector<double> xs{I.lo};
    if (p.degree() >= 2)
        for (double c : real_roots(p.derivative(), I)) xs.push_back(c);
    xs.push_back(I.hi);
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace detail

// max of |p| over I; the argmax is the leftmost candidate attaining it.
inline Extremum sup_abs(const Polynomial& p, const Interval& I) {
    Extremum best{-1.0, I.lo};
    for (double x : detail::extremum_candidates(p, I)) {
        double v = std::abs(p(x));
        if (v > best.value) best = {v, x};
    }
    return best;
}

inline Extremum poly_min(const Polynomial& p, const Interval& I) {
    Extremum best{std::numeric_limits<double>::infinity(), I.lo};
    for (double x : detail::extremum_candidates(p, I)) {
        double v = p(x);
        if (v < best.value) best = {v, x};
    }
    return best;
}

inline Extremum poly_max(const Polynomial& p, const Interval& I) {
    Extremum best{-std::numeric_limits<double>::infinity(), I.lo};
    for (double x : detail::extremum_candidates(p, I)) {
        double v = p(x);
        if (v > best.value) best = {v, x};
    }
    return best;
}

// Interior roots of p'' where p'' changes sign. The sign is sampled at the
// midpoints of the adjacent root-free subintervals, so tangential (double)
// zeros of p'' do not count.
inline std::vector<double> inflection_points(const Polynomial& p, const Interval& I) {
    if (p.degree() < 2) return {};
    Polynomial pdd = p.derivative(2);
    if (pdd.is_zero() || pdd.degree() == 0) return {};

    std::vector<double> rs;
    for (double r : real_roots(pdd, I))
        if (r > I.lo && r < I.hi) rs.push_back(r);
    if (rs.empty()) return {};

    std::vector<double> probes;
    probes.push_back(0.5 * (I.lo + rs.front()));
    for (std::size_t i = 0; i + 1 < rs.size(); ++i)
        probes.push_back(0.5 * (rs[i] + rs[i + 1]));
    probes.push_back(0.5 * (rs.back() + I.hi));

    std::vector<double> out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double a = pdd(probes[i]), b = pdd(probes[i + 1]);
        if (a != 0.0 && b != 0.0 && (a < 0.0) != (b < 0.0)) out.push_back(rs[i]);
    }
    return out;
}

// {x in domain : target.lo <= p(x) <= target.hi} as maximal closed
// intervals. Isolated touch points come back as zero-width intervals.
inline std::vector<Interval> preimage_interval(const Polynomial& p, const Interval& target,
                                               const Interval& domain) {
    constexpr double kMemberTol = 1e-10;
    auto inside = [&](double x) {
        double v = p(x);
        return target.lo - kMemberTol <= v && v <= target.hi + kMemberTol;
    };

    if (p.degree() <= 0) {
        double v = p.is_zero() ? 0.0 : p.coeffs()[0];
        if (target.lo - kMemberTol <= v && v <= target.hi + kMemberTol) return {domain};
        return {};
    }

    std::vector<double> cands{domain.lo, domain.hi};
    for (double bound : {target.lo, target.hi}) {
        Polynomial q = p - Polynomial::constant(bound);
        for (double r : real_roots(q, domain)) cands.push_back(r);
        if (target.degenerate()) break;  // same boundary twice
    }
    std::sort(cands.begin(), cands.end());
    std::vector<double> xs;
    for (double c : cands)
        if (xs.empty() || c - xs.back() > detail::kRootMergeTol) xs.push_back(c);

    std::vector<Interval> out;
    auto push = [&](double a, double b) {
        if (!out.empty() && out.back().hi == a)
            out.back() = Interval(out.back().lo, b);
        else
            out.push_back(Interval(a, b));
    };

    std::vector<bool> seg_in(xs.size() > 0 ? xs.size() - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        seg_in[i] = inside(0.5 * (xs[i] + xs[i + 1]));

    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (seg_in[i]) {
            push(xs[i], xs[i + 1]);
        } else {
            bool left_in = i > 0 && seg_in[i - 1];
            if (!left_in && inside(xs[i])) push(xs[i], xs[i]);
        }
    }
    if (!xs.empty()) {
        bool last_in = !seg_in.empty() && seg_in.back();
        if (!last_in && inside(xs.back())) push(xs.back(), xs.back());
    }
    return out;
}

}  // namespace coconvex
