#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coconvex/shape.hpp"

using namespace coconvex;

namespace {

PiecewiseFn example1_f() {
    return parse_piecewise(
        "[-3, 0) : x\n"
        "[0, 3]  : 0.5*x^4 - (x - 1)^3 - 2*x^2\n");
}

Polynomial random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& v : c) v = coef(rng);
    return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("partition validation") {
    CHECK_NOTHROW(YPartition({}, Interval(-1.0, 1.0)));
    CHECK_NOTHROW(YPartition({-0.5, 0.5}, Interval(-1.0, 1.0)));
    CHECK_THROWS_AS(YPartition({0.5, -0.5}, Interval(-1.0, 1.0)), Error);
    CHECK_THROWS_AS(YPartition({-1.0}, Interval(-1.0, 1.0)), Error);
    CHECK_THROWS_AS(YPartition({1.0}, Interval(-1.0, 1.0)), Error);
}

TEST_CASE("sign pattern alternates from the right") {
    CHECK(sign_pattern(YPartition({}, Interval(-1.0, 1.0))) == std::vector<int>{+1});
    CHECK(sign_pattern(YPartition({0.0}, Interval(-1.0, 1.0))) == std::vector<int>{-1, +1});
    CHECK(sign_pattern(YPartition({-2.0, -1.0, 1.0, 2.0}, Interval(-3.0, 3.0))) ==
          std::vector<int>{+1, -1, +1, -1, +1});

    for (std::size_t s = 0; s <= 9; ++s) {
        std::vector<double> pts;
        for (std::size_t i = 0; i < s; ++i)
            pts.push_back(-0.9 + 1.8 * static_cast<double>(i) / 9.0);
        auto pattern = sign_pattern(YPartition(pts, Interval(-1.0, 1.0)));
        REQUIRE(pattern.size() == s + 1);
        CHECK(pattern.back() == +1);
        for (std::size_t i = 0; i + 1 < pattern.size(); ++i)
            CHECK(pattern[i] == -pattern[i + 1]);
    }
}

TEST_CASE("secant test on the worked examples") {
    // example 1: f(1.5) = -2.09375 <= 0.5 f(1) + 0.5 f(2) = -1.25
    PiecewiseFn f = example1_f();
    CHECK(f(1.5) == Catch::Approx(-2.09375).margin(1e-12));
    CHECK(0.5 * f(1.0) + 0.5 * f(2.0) == Catch::Approx(-1.25).margin(1e-12));

    // example 2: p5(1.25) = -1.371 <= 0.5 p5(1.5) + 0.5 p5(1) = -1.094
    Polynomial p5({4.0, 0.0, -5.0, 0.0, 1.0});
    CHECK(p5(1.25) == Catch::Approx(-1.37109375).margin(1e-12));
    CHECK(0.5 * p5(1.5) + 0.5 * p5(1.0) == Catch::Approx(-1.09375).margin(1e-12));

    // a concave function is refuted with a concrete counterexample
    PiecewiseFn conc = PiecewiseFn::from_polynomial(Polynomial({0.0, 0.0, -1.0}),
                                                    Interval(-1.0, 1.0));
    ShapeVerdict v = secant_convexity_test(conc, Interval(-1.0, 1.0), 200,
                                           default_lambda_grid());
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.counterexample.has_value());
    CHECK(v.counterexample->lhs > v.counterexample->rhs + 1e-9);
}

TEST_CASE("secant test holds for certified convex polynomials") {
    std::mt19937 rng(2025);
    int tested = 0;
    while (tested < 25) {
        // integrate a squared polynomial twice: p'' = q^2 >= 0
        Polynomial q = random_poly(rng, 2);
        Polynomial pdd = q * q;
        std::vector<double> c(pdd.coeffs().size() + 2, 0.0);
        for (std::size_t i = 0; i < pdd.coeffs().size(); ++i)
            c[i + 2] = pdd.coeffs()[i] / static_cast<double>((i + 1) * (i + 2));
        Polynomial p(std::move(c));
        REQUIRE(poly_convex_on(p, Interval(-1.0, 1.0)));
        PiecewiseFn f = PiecewiseFn::from_polynomial(p, Interval(-1.0, 1.0));
        ShapeVerdict v = secant_convexity_test(f, Interval(-1.0, 1.0), 100,
                                               default_lambda_grid());
        CHECK(v.holds);
        ++tested;
    }
}

TEST_CASE("coconvexity membership, sampled") {
    PiecewiseFn cube = PiecewiseFn::from_polynomial(Polynomial({0.0, 0.0, 0.0, 1.0}),
                                                    Interval(-1.0, 1.0));
    CHECK(in_delta2(cube, YPartition({0.0}, Interval(-1.0, 1.0))).holds);

    PiecewiseFn sq = PiecewiseFn::from_polynomial(Polynomial({0.0, 0.0, 1.0}),
                                                  Interval(-1.0, 1.0));
    CHECK(in_delta2(sq, YPartition({}, Interval(-1.0, 1.0))).holds);
    // and x^2 fails as a declared coconvex-with-one-flip function
    CHECK_FALSE(in_delta2(sq, YPartition({0.0}, Interval(-1.0, 1.0))).holds);
}

TEST_CASE("coconvexity membership, certified for polynomials") {
    Polynomial p5({4.0, 0.0, -5.0, 0.0, 1.0});
    // the declared partition of example 2 is not the inflection set of p5:
    // p5'' = 12x^2 - 10 keeps its sign across +-1 and +-2
    ShapeVerdict v = in_delta2(p5, YPartition({-2.0, -1.0, 1.0, 2.0}, Interval(-3.0, 3.0)));
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.counterexample.has_value());
    const Counterexample& ce = *v.counterexample;
    CHECK(ce.orientation * (ce.lhs - ce.rhs) > 1e-9);

    // with the true inflection points it is coconvex
    auto infl = inflection_points(p5, Interval(-3.0, 3.0));
    CHECK(in_delta2(p5, YPartition(infl, Interval(-3.0, 3.0))).holds);

    CHECK(in_delta2(Polynomial({0.0, 0.0, 0.0, 1.0}),
                    YPartition({0.0}, Interval(-1.0, 1.0)))
              .holds);
}

TEST_CASE("recomputed inflection partitions always verify") {
    std::mt19937 rng(606060);
    int done = 0;
    while (done < 100) {
        Polynomial p = random_poly(rng, 6);
        if (p.degree() < 2) continue;
        Interval I(-3.0, 3.0);
        auto infl = inflection_points(p, I);
        // orient so the rightmost subinterval is convex
        Polynomial pdd = p.derivative(2);
        if (pdd.is_zero()) continue;
        double probe = infl.empty() ? I.midpoint() : 0.5 * (infl.back() + I.hi);
        if (pdd(probe) < 0.0) {
            p = -1.0 * p;
        }
        CHECK(in_delta2(p, YPartition(infl, I)).holds);
        ++done;
    }
}

TEST_CASE("membership survives scaling and pullback") {
    Polynomial p5({4.0, 0.0, -5.0, 0.0, 1.0});
    Interval I(-3.0, 3.0);
    auto infl = inflection_points(p5, I);
    YPartition Y(infl, I);
    REQUIRE(in_delta2(p5, Y).holds);
    CHECK(in_delta2(3.5 * p5, Y).holds);

    // pull the whole configuration back to [-1, 1]
    PiecewiseFn g = affine_pullback(PiecewiseFn::from_polynomial(p5, I), I);
    std::vector<double> mapped;
    for (double y : infl) mapped.push_back(y / 3.0);
    CHECK(in_delta2(g, YPartition(mapped, Interval(-1.0, 1.0))).holds);
}
