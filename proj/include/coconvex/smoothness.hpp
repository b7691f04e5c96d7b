#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "coconvex/piecewise.hpp"

namespace coconvex {

enum class ModulusMode { Standard, Replication };

// Parameters of a weighted smoothness modulus run. Standard mode follows
// the textbook convention on [-1, 1] with position-dependent step h*phi(x),
// phi(x) = sqrt(1 - x^2), and weight phi^r. Replication mode reproduces the
// worked-example arithmetic instead: one fixed step h on an arbitrary
// interval, weighted by the maximum of |1 - x^2| over that interval.
struct ModulusSpec {
    int k = 2;                        // difference order (0 allowed in Standard mode)
    int r = 2;                        // weight power
    double t = 0.5;                   // step cap
    ModulusMode mode = ModulusMode::Standard;
    Interval interval{-1.0, 1.0};
    std::optional<double> h_explicit;  // Replication only; must be <= t
};

inline void validate(const ModulusSpec& spec) {
    if (spec.k < 0) throw Error("difference order k must be >= 0");
    if (spec.r < 0) throw Error("weight power r must be >= 0");
    if (!(spec.t > 0.0)) throw Error("step cap t must be positive");
    if (spec.mode == ModulusMode::Standard) {
        if (!(spec.interval == Interval(-1.0, 1.0)))
            throw Error("standard mode is defined on [-1, 1]");
    } else {
        if (!spec.h_explicit) throw Error("replication mode needs an explicit step h");
        if (!(*spec.h_explicit > 0.0) || *spec.h_explicit > spec.t)
            throw Error("replication step h must satisfy 0 < h <= t");
        if (spec.k < 1) throw Error("replication mode needs k >= 1");
    }
}

// Points to avoid when scanning functions with poles. A sample within
// `radius` of any listed point is treated like a singular evaluation.
struct SingularGuard {
    std::vector<double> points;
    double radius = 1e-3;

    bool excludes(double s) const {
        for (double p : points)
            if (std::abs(s - p) < radius) return true;
        return false;
    }
};

namespace detail {

inline std::vector<double> binomial_row(int k) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 1; i <= k; ++i)
        row[static_cast<std::size_t>(i)] =
            row[static_cast<std::size_t>(i - 1)] * static_cast<double>(k - i + 1) / i;
    return row;
}

constexpr int kModulusXGrid = 2001;
constexpr int kModulusHGrid = 64;

// Fixed logarithmic step lattice h_j = 2 * 2^(-j/8), j = 0..63, spanning
// [2^(-6.875), 2]. A step cap t selects the lattice points <= t, so the
// step sets for increasing t are nested and the modulus is nondecreasing
// in t by construction. Steps above 2 never fit a difference tuple inside
// [-1, 1] anyway. Binary-lattice caps (0.25, 0.5, 1, 2) are hit exactly.
inline double lattice_step(int j) {
    return 2.0 * std::pow(2.0, -static_cast<double>(j) / 8.0);
}

}  // namespace detail

// k-th symmetric difference with constant step: sum over i of
// C(k,i) * (-1)^(k-i) * g(x - k*step/2 + i*step).
inline double sym_diff(const PiecewiseFn& g, double x, double step, int k) {
    if (k < 1) throw Error("difference order k must be >= 1");
    const std::vector<double> binom = detail::binomial_row(k);
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) {
        double s = x - static_cast<double>(k) * step / 2.0 + static_cast<double>(i) * step;
        double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
        acc += binom[static_cast<std::size_t>(i)] * sign * g(s);
    }
    return acc;
}

// max over the interval of |1 - x^2|; for intervals reaching past [-1, 1]
// this is attained at an endpoint (e.g. 8 on [-3, 3]).
inline double replication_weight(const Interval& I) {
    double w = std::max(std::abs(1.0 - I.lo * I.lo), std::abs(1.0 - I.hi * I.hi));
    if (I.contains(0.0)) w = std::max(w, 1.0);
    return w;
}

// The arithmetic step the worked examples apply to a quoted difference
// value: weight times |delta|.
inline double apply_replication_weight(double delta_value, const Interval& I) {
    return replication_weight(I) * std::abs(delta_value);
}

// Textbook weighted modulus on [-1, 1] with p = infinity:
//   sup_{0<h<=t} max_x |phi(x)^r * Delta^k_{h phi(x)}(g, x)|.
// Sample tuples leaving [-1, 1] contribute nothing; k = 0 degenerates to
// the weighted sup norm |phi^r g|.
inline double dt_modulus_standard(const PiecewiseFn& g, const ModulusSpec& spec,
                                  const SingularGuard& guard = {}) {
    validate(spec);
    if (spec.mode != ModulusMode::Standard) throw Error("spec.mode must be Standard");
    if (!g.domain().contains(Interval(-1.0, 1.0)))
        throw Error("standard mode needs the function defined on all of [-1, 1]");

    const int nx = detail::kModulusXGrid;
    auto phi2 = [](double x) { return std::max(0.0, 1.0 - x * x); };
    auto weight = [&](double x) {
        return spec.r == 0 ? 1.0 : std::pow(phi2(x), 0.5 * static_cast<double>(spec.r));
    };

    if (spec.k == 0) {
        double best = 0.0;
        for (int j = 0; j < nx; ++j) {
            double x = -1.0 + 2.0 * static_cast<double>(j) / (nx - 1);
            if (guard.excludes(x)) continue;
            double v;
            try {
                v = std::abs(g(x)) * weight(x);
            } catch (const DivisionByZero&) {
                continue;
            }
            if (v > best) best = v;
        }
        return best;
    }

    const std::vector<double> binom = detail::binomial_row(spec.k);
    double best = 0.0;
    for (int jh = 0; jh < detail::kModulusHGrid; ++jh) {
        double h = detail::lattice_step(jh);
        if (h > spec.t) continue;
        for (int j = 0; j < nx; ++j) {
            double x = -1.0 + 2.0 * static_cast<double>(j) / (nx - 1);
            double step = h * std::sqrt(phi2(x));
            double acc = 0.0;
            bool ok = true;
            for (int i = 0; i <= spec.k && ok; ++i) {
                double s = x - spec.k * step / 2.0 + i * step;
                if (s < -1.0 || s > 1.0 || guard.excludes(s)) {
                    ok = false;
                    break;
                }
                double sign = ((spec.k - i) % 2 == 0) ? 1.0 : -1.0;
                try {
                    acc += binom[static_cast<std::size_t>(i)] * sign * g(s);
                } catch (const DivisionByZero&) {
                    ok = false;
                }
            }
            if (!ok) continue;
            double v = weight(x) * std::abs(acc);
            if (v > best) best = v;
        }
    }
    return best;
}

// Worked-example arithmetic: constant step h (no phi scaling), weight
// max |1 - x^2| over the interval, maximum of |Delta^k| over an interior
// grid with singular tuples excluded.
inline double dt_modulus_replication(const PiecewiseFn& g, const ModulusSpec& spec,
                                     const SingularGuard& guard = {}) {
    validate(spec);
    if (spec.mode != ModulusMode::Replication) throw Error("spec.mode must be Replication");
    if (!g.domain().contains(spec.interval))
        throw Error("modulus interval must lie inside the function domain");

    const double h = *spec.h_explicit;
    const double a = spec.interval.lo + static_cast<double>(spec.k) * h / 2.0;
    const double b = spec.interval.hi - static_cast<double>(spec.k) * h / 2.0;
    if (!(a <= b)) return 0.0;

    const std::vector<double> binom = detail::binomial_row(spec.k);
    double best = 0.0;
    const int nx = detail::kModulusXGrid;
    for (int j = 0; j < nx; ++j) {
        double x = a + (b - a) * static_cast<double>(j) / (nx - 1);
        double acc = 0.0;
        bool ok = true;
        for (int i = 0; i <= spec.k && ok; ++i) {
            double s = x - spec.k * h / 2.0 + i * h;
            if (guard.excludes(s)) {
                ok = false;
                break;
            }
            double sign = ((spec.k - i) % 2 == 0) ? 1.0 : -1.0;
            try {
                acc += binom[static_cast<std::size_t>(i)] * sign * g(s);
            } catch (const DivisionByZero&) {
                ok = false;
            }
        }
        if (!ok) continue;
        double v = std::abs(acc);
        if (v > best) best = v;
    }
    return replication_weight(spec.interval) * best;
}

}  // namespace coconvex
