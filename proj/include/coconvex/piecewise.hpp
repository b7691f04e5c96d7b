#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coconvex/expr.hpp"
#include "coconvex/polynomial.hpp"

namespace coconvex {

// One piece of a piecewise function: a subinterval with per-end
// open/closed flags and the expression that rules it.
struct Piece {
    Interval iv;
    bool lo_closed = true;
    bool hi_closed = true;
    Expr body;
    // Filled at construction when the body is a polynomial; Horner
    // evaluation is much faster than walking the tree.
    std::optional<Polynomial> compiled;

    bool owns(double x) const {
        bool lo_ok = x > iv.lo || (lo_closed && x == iv.lo);
        bool hi_ok = x < iv.hi || (hi_closed && x == iv.hi);
        return lo_ok && hi_ok;
    }
};

// Piecewise function on a closed interval. Pieces are pairwise disjoint,
// ordered, and tile the domain exactly: adjacent pieces share a boundary
// point owned by exactly one of them.
class PiecewiseFn {
public:
    PiecewiseFn(std::vector<Piece> pieces, Interval domain)
        : pieces_(std::move(pieces)), domain_(domain) {
        validate();
        for (Piece& p : pieces_) {
            try {
                p.compiled = expr_to_polynomial(p.body);
            } catch (const NotAPolynomial&) {
                p.compiled.reset();
            }
        }
    }

    static PiecewiseFn single(Expr body, Interval domain) {
        std::vector<Piece> ps;
        ps.push_back(Piece{domain, true, true, std::move(body), std::nullopt});
        return PiecewiseFn(std::move(ps), domain);
    }

    static PiecewiseFn from_polynomial(const Polynomial& p, Interval domain);

    const std::vector<Piece>& pieces() const { return pieces_; }
    const Interval& domain() const { return domain_; }

    int owner_index(double x) const {
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (pieces_[i].owns(x)) return static_cast<int>(i);
        return -1;
    }

    double operator()(double x) const {
        int i = owner_index(x);
        if (i < 0) throw OutOfDomain(x);
        const Piece& p = pieces_[static_cast<std::size_t>(i)];
        if (p.compiled) return (*p.compiled)(x);
        return eval_expr(p.body, x);
    }

private:
    std::vector<Piece> pieces_;
    Interval domain_;

    void validate() const {
        if (pieces_.empty()) throw InvalidPiecewise("piecewise function has no pieces");
        if (pieces_.front().iv.lo != domain_.lo || !pieces_.front().lo_closed)
            throw InvalidPiecewise("first piece must start closed at the domain's left end");
        if (pieces_.back().iv.hi != domain_.hi || !pieces_.back().hi_closed)
            throw InvalidPiecewise("last piece must end closed at the domain's right end");
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
            const Piece& a = pieces_[i];
            const Piece& b = pieces_[i + 1];
            if (a.iv.hi != b.iv.lo)
                throw InvalidPiecewise("pieces must be adjacent with no gap or overlap");
            if (a.hi_closed == b.lo_closed)
                throw InvalidPiecewise("a shared boundary must be owned by exactly one piece");
        }
    }
};

inline Expr polynomial_to_expr(const Polynomial& p) {
    if (p.is_zero()) return Expr::constant(0.0);
    Expr e = Expr::constant(0.0);
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        Expr term = i == 0 ? Expr::constant(p.coeffs()[i])
                           : Expr::binary(Expr::Kind::Mul, Expr::constant(p.coeffs()[i]),
                                          Expr::pow(Expr::var(), static_cast<int>(i)));
        e = first ? std::move(term)
                  : Expr::binary(Expr::Kind::Add, std::move(e), std::move(term));
        first = false;
    }
    return e;
}

inline PiecewiseFn PiecewiseFn::from_polynomial(const Polynomial& p, Interval domain) {
    return single(polynomial_to_expr(p), domain);
}

inline double eval_fn(const PiecewiseFn& f, double x) { return f(x); }

// Central second difference quotient; requires x and both offset points to
// live in the same piece.
inline double numeric_second_derivative(const PiecewiseFn& f, double x, double delta) {
    if (delta <= 0.0) throw Error("delta must be positive");
    int i0 = f.owner_index(x);
    if (i0 < 0) throw OutOfDomain(x);
    int im = f.owner_index(x - delta);
    if (im < 0) throw OutOfDomain(x - delta);
    int ip = f.owner_index(x + delta);
    if (ip < 0) throw OutOfDomain(x + delta);
    if (im != i0 || ip != i0)
        throw PieceBoundaryCrossed("stencil around " + std::to_string(x) +
                                   " crosses a piece boundary");
    return (f(x - delta) - 2.0 * f(x) + f(x + delta)) / (delta * delta);
}

inline double pointwise_deviation(const PiecewiseFn& f, const Polynomial& p, double x0) {
    return std::abs(f(x0) - p(x0));
}

struct SupDeviation {
    double value = 0.0;
    double argmax = 0.0;
    int singular_skipped = 0;  // samples dropped due to DivisionByZero
};

// max over I of |f - p| by a 10,001-point scan plus three rounds of local
// trisection refinement around the best cell. Singular samples are skipped
// and counted rather than thrown.
inline SupDeviation sup_deviation(const PiecewiseFn& f, const Polynomial& p, const Interval& I) {
    if (!f.domain().contains(I)) throw OutOfDomain(I.lo < f.domain().lo ? I.lo : I.hi);
    constexpr int kGrid = 10001;
    SupDeviation best{-1.0, I.lo, 0};

    auto sample = [&](double x) {
        double v;
        try {
            v = std::abs(f(x) - p(x));
        } catch (const DivisionByZero&) {
            ++best.singular_skipped;
            return;
        }
        if (v > best.value) {
            best.value = v;
            best.argmax = x;
        }
    };

    const double w = I.width();
    for (int j = 0; j < kGrid; ++j) sample(I.lo + w * static_cast<double>(j) / (kGrid - 1));

    double radius = w / (kGrid - 1);
    for (int round = 0; round < 3; ++round) {
        double a = std::max(I.lo, best.argmax - radius);
        double b = std::min(I.hi, best.argmax + radius);
        for (int j = 0; j <= 12; ++j) sample(a + (b - a) * static_cast<double>(j) / 12.0);
        radius /= 3.0;
    }
    if (best.value < 0.0) best.value = 0.0;  // every sample singular
    return best;
}

// Affine change of variables onto [-1, 1]: returns g with
// g(u) = f(mid + half*u). Piece boundaries are remapped; the variable in
// each body is substituted by the affine map so evaluation stays exact.
inline PiecewiseFn affine_pullback(const PiecewiseFn& f, const Interval& from) {
    if (!(from.lo < from.hi)) throw Error("pullback interval must have positive width");
    const double mid = from.midpoint();
    const double half = 0.5 * from.width();
    Expr map = Expr::binary(Expr::Kind::Add, Expr::constant(mid),
                            Expr::binary(Expr::Kind::Mul, Expr::constant(half), Expr::var()));

    auto to_u = [&](double x) { return (x - mid) / half; };

    const auto& src = f.pieces();
    std::vector<double> bounds(src.size() + 1);
    bounds[0] = -1.0;
    bounds[src.size()] = 1.0;
    for (std::size_t i = 0; i + 1 < src.size(); ++i) bounds[i + 1] = to_u(src[i].iv.hi);

    std::vector<Piece> out;
    for (std::size_t i = 0; i < src.size(); ++i) {
        Piece q;
        q.iv = Interval(bounds[i], bounds[i + 1]);
        q.lo_closed = src[i].lo_closed;
        q.hi_closed = src[i].hi_closed;
        q.body = substitute(src[i].body, map);
        out.push_back(std::move(q));
    }
    return PiecewiseFn(std::move(out), Interval(-1.0, 1.0));
}

namespace detail {

struct PieceHeader {
    double lo, hi;
    bool lo_closed, hi_closed;
    std::size_t body_offset;
};

inline double parse_bound_number(const std::string& s, std::size_t& pos, std::size_t base) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' || s[pos] == 'e' ||
            s[pos] == 'E' ||
            ((s[pos] == '-' || s[pos] == '+') && (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
        ++pos;
    double v = 0.0;
    auto res = std::from_chars(s.data() + start, s.data() + pos, v);
    if (res.ec != std::errc() || res.ptr == s.data() + start)
        throw ParseError(base + start, "number");
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return v;
}

inline PieceHeader parse_piece_header(const std::string& line, std::size_t base) {
    PieceHeader h{};
    std::size_t pos = 0;
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size() || (line[pos] != '[' && line[pos] != '('))
        throw ParseError(base + pos, "'[' or '('");
    h.lo_closed = line[pos] == '[';
    ++pos;
    h.lo = parse_bound_number(line, pos, base);
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size() || line[pos] != ',') throw ParseError(base + pos, "','");
    ++pos;
    h.hi = parse_bound_number(line, pos, base);
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size() || (line[pos] != ']' && line[pos] != ')'))
        throw ParseError(base + pos, "']' or ')'");
    h.hi_closed = line[pos] == ']';
    ++pos;
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size() || line[pos] != ':') throw ParseError(base + pos, "':'");
    h.body_offset = pos + 1;
    return h;
}

}  // namespace detail

// Piecewise file format: one piece per line, `[a, b) : <expr>`, with
// '['/'(' and ']'/')' end flags; '#' starts a comment.
inline PiecewiseFn parse_piecewise(const std::string& text) {
    std::vector<Piece> pieces;
    std::istringstream in(text);
    std::string line;
    std::size_t base = 0;
    while (std::getline(in, line)) {
        std::size_t line_base = base;
        base += line.size() + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        detail::PieceHeader h = detail::parse_piece_header(line, line_base);
        Expr body;
        try {
            body = parse_expr(std::string_view(line).substr(h.body_offset));
        } catch (const ParseError& e) {
            throw ParseError(line_base + h.body_offset + e.offset, e.expected);
        }
        pieces.push_back(
            Piece{Interval(h.lo, h.hi), h.lo_closed, h.hi_closed, std::move(body), std::nullopt});
    }
    if (pieces.empty()) throw InvalidPiecewise("no pieces found");
    Interval domain(pieces.front().iv.lo, pieces.back().iv.hi);
    return PiecewiseFn(std::move(pieces), domain);
}

}  // namespace coconvex
