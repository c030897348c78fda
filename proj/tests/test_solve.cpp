#include "pwldyn/generators.hpp"
#include "pwldyn/solve.hpp"

#include <doctest.h>

#include <random>

using namespace pwldyn;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
Interval unit() { return Interval(q(0), q(1)); }

RootSet points(std::initializer_list<Rational> xs) {
    std::vector<Interval> parts;
    for (const auto& x : xs) parts.push_back(Interval::point(x));
    return RootSet::canonical(parts);
}
}  // namespace

TEST_CASE("preimages, including plateau preimages") {
    CHECK(preimage(tent_map(), Interval::point(q(1))) == points({q(1, 2)}));
    CHECK(preimage(tent_map(), Interval(q(1, 2), q(1))) ==
          RootSet::canonical({Interval(q(1, 4), q(3, 4))}));
    CHECK(preimage(truncate_tent(q(6, 7)), Interval::point(q(6, 7))) ==
          RootSet::canonical({Interval(q(3, 7), q(4, 7))}));
}

TEST_CASE("constant-target solving against the hand-written T^2 oracle") {
    // T^2 pieces by hand: 4x, 2-4x, 4x-2, 4-4x on the quarters.
    MapPowers tent(tent_map());
    RootSet r = solve_iter_eq_const(tent, 2, q(1, 3), unit());
    CHECK(r == points({q(1, 12), q(5, 12), q(7, 12), q(11, 12)}));

    MapPowers g(example_g());
    RootSet rg = solve_iter_eq_const(g, 2, q(1, 6), Interval(q(1, 6), q(1, 2)));
    CHECK(rg == points({q(5, 12)}));
    RootSet rg4 = solve_iter_eq_const(g, 4, q(1, 6), Interval(q(1, 6), q(1, 2)));
    auto mn = rg4.extremal(Side::minimum, Interval(q(1, 6), q(1, 2)));
    REQUIRE(mn.has_value());
    CHECK(*mn == q(11, 48));
}

TEST_CASE("fixed-point solving") {
    MapPowers tent(tent_map());
    CHECK(solve_iter_fixed(tent, 2, unit()) == points({q(0), q(2, 5), q(2, 3), q(4, 5)}));
    CHECK(solve_iter_fixed(tent, 1, unit()) == points({q(0), q(2, 3)}));
    MapPowers g(example_g());
    auto r = solve_iter_fixed(g, 2, Interval(q(1, 6), q(1, 2)));
    auto mn = r.extremal(Side::minimum, Interval(q(1, 6), q(1, 2)));
    REQUIRE(mn.has_value());
    CHECK(*mn == q(1, 3));
}

TEST_CASE("a slope-one zero-offset piece yields an interval of fixed points") {
    PwlMap f(unit(), {{q(0), q(0)}, {q(1, 4), q(1, 4)}, {q(1, 2), q(1, 4)}, {q(1), q(1, 2)}});
    RootSet r = solve_iter_fixed(f, 1, unit());
    REQUIRE(!r.empty());
    CHECK(r.components()[0] == Interval(q(0), q(1, 4)));
}

TEST_CASE("tent fixed-point counts are 2^k and slopes stay in {0} ∪ {±2^j}") {
    MapPowers tent(tent_map());
    MapPowers trunc(truncate_tent(q(6, 7)));
    for (int k = 1; k <= 12; ++k) {
        RootSet r = solve_iter_fixed(tent, k, unit());
        CHECK(r.all_points());
        CHECK(r.size() == std::size_t(1) << k);
    }
    for (int k = 1; k <= 8; ++k) {
        for (auto* pw : {&tent, &trunc}) {
            const PwlMap& F = pw->pow(k);
            for (std::size_t i = 0; i < F.piece_count(); ++i) {
                Rational s = F.slope(i);
                if (s < q(0)) s = -s;
                CHECK(s != q(1));
                if (s != q(0)) {
                    // |slope| must be a power of two: num 2^j, den 1.
                    CHECK(s.den() == 1);
                    mpz_class n = s.num();
                    CHECK(mpz_popcount(n.get_mpz_t()) == 1);
                }
            }
        }
    }
}

TEST_CASE("pullback and explicit-iterate strategies agree (property)") {
    std::mt19937 rng(21);
    int done = 0;
    while (done < 25) {
        PwlMap f = random_endomorphism(rng, 5, 24);
        int k = 1 + int(rng() % 6);
        Rational c = random_rational(rng, q(0), q(1), 48);
        try {
            MapPowers pw(f);
            RootSet a = solve_iter_eq_const(pw, k, c, unit(), SolveStrategy::explicit_iterate);
            RootSet b = solve_iter_eq_const(pw, k, c, unit(), SolveStrategy::pullback);
            CHECK(a == b);
            for (int s = 0; s < 60; ++s) {
                Rational x = random_rational(rng, q(0), q(1), 211);
                CHECK(a.contains(x) == (pw.eval_pow(k, x) == c));
            }
            ++done;
        } catch (const CapExceeded&) {
        }
    }
}

TEST_CASE("strict-inequality checking is exact") {
    PwlMap t = tent_map();
    PwlMap half = constant_map(unit(), q(1, 2));
    // T(x) < 1/2 fails on [1/4, 3/4]; holds on (0, 1/4) open.
    CHECK(!strictly_below(t, half, Interval(q(0), q(1, 2)), false, false));
    CHECK(strictly_below(t, half, Interval(q(0), q(1, 4)), false, false));
    CHECK(strictly_below(t, half, Interval(q(0), q(1, 8)), true, true));
    // Touching at an open endpoint is allowed, at a closed one is not.
    CHECK(strictly_below(t, half, Interval(q(0), q(1, 4)), true, false));
    CHECK(!strictly_below(t, half, Interval(q(0), q(1, 4)), true, true));
    // A plateau equal to the bound anywhere inside the window fails.
    PwlMap th = truncate_tent(q(1, 2));
    CHECK(!strictly_below(th, half, Interval(q(0), q(1, 2)), false, false));
}
