#include "pwldyn/generators.hpp"
#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"

#include <doctest.h>

#include <random>

using namespace pwldyn;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
Interval unit() { return Interval(q(0), q(1)); }
}  // namespace

TEST_CASE("map construction validates shape") {
    CHECK_NOTHROW(tent_map());
    CHECK_THROWS_AS(PwlMap(unit(), {{q(0), q(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(PwlMap(unit(), {{q(0), q(0)}, {q(0), q(1)}, {q(1), q(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PwlMap(unit(), {{q(0), q(0)}, {q(1, 2), q(1)}}), std::invalid_argument);
    // Leaving the domain is recorded, not rejected.
    PwlMap out(unit(), {{q(0), q(0)}, {q(1), q(2)}});
    CHECK(!out.is_endomorphism());
    CHECK(tent_map().is_endomorphism());
}

TEST_CASE("evaluation is exact on the catalog maps") {
    PwlMap t = tent_map();
    CHECK(t.eval(q(1, 2)) == q(1));
    CHECK(t.eval(q(2, 5)) == q(4, 5));
    PwlMap g = example_g();
    CHECK(g.eval(q(13, 18)) == q(5, 9));
    CHECK(g.eval(q(0)) == q(1, 2));
    CHECK_THROWS_AS(t.eval(q(2)), std::domain_error);
}

TEST_CASE("composition breakpoints and values") {
    PwlMap t2 = compose(tent_map(), tent_map());
    REQUIRE(t2.nodes().size() == 5);
    CHECK(t2.nodes()[0].x == q(0));
    CHECK(t2.nodes()[1].x == q(1, 4));
    CHECK(t2.nodes()[2].x == q(1, 2));
    CHECK(t2.nodes()[3].x == q(3, 4));
    CHECK(t2.nodes()[4].x == q(1));

    PwlMap ident = identity_map(unit());
    CHECK(extensionally_equal(compose(ident, example_g()), example_g()));
    CHECK(extensionally_equal(compose(example_g(), ident), example_g()));

    // g maps [0,1/2] into [1/2,1] where g(w) = 2-2w, so g^2(x) = 1-2x there.
    PwlMap g2 = compose(example_g(), example_g());
    CHECK(g2.eval(q(0)) == q(1));
    CHECK(g2.eval(q(1, 4)) == q(1, 2));
    CHECK(g2.eval(q(1, 2)) == q(0));
}

TEST_CASE("iterates double the tent piece count") {
    MapPowers tent(tent_map());
    for (int k = 1; k <= 12; ++k) {
        CHECK(tent.pow(k).piece_count() == std::size_t(1) << k);
    }
    CHECK(extensionally_equal(iterate_map(tent_map(), 1), tent_map()));
    CHECK(iterate_map(example_g(), 2).eval(q(1, 6)) == q(2, 3));
}

TEST_CASE("iterate rejects non-self-maps and enforces the cap") {
    PwlMap out(unit(), {{q(0), q(0)}, {q(1), q(2)}});
    CHECK_THROWS_AS(iterate_map(out, 2), std::invalid_argument);
    std::size_t old = piece_cap();
    set_piece_cap(16);
    CHECK_THROWS_AS(iterate_map(tent_map(), 8), CapExceeded);
    set_piece_cap(old);
}

TEST_CASE("composition law f∘g pointwise (property)") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        PwlMap f = random_endomorphism(rng, 5, 24);
        PwlMap g = random_endomorphism(rng, 5, 24);
        PwlMap fg = compose(f, g);
        for (int s = 0; s < 25; ++s) {
            Rational x = random_rational(rng, q(0), q(1), 97);
            CHECK(fg.eval(x) == f.eval(g.eval(x)));
        }
    }
}

TEST_CASE("iterate addition law f^{a+b} = f^a ∘ f^b (property)") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        PwlMap f = random_endomorphism(rng, 4, 16);
        MapPowers pw(f);
        int a = 1 + int(rng() % 3), b = 1 + int(rng() % 3);
        try {
            PwlMap lhs = pw.pow(a + b);
            PwlMap rhs = compose(pw.pow(a), pw.pow(b));
            CHECK(extensionally_equal(lhs, rhs));
            for (int s = 0; s < 20; ++s) {
                Rational x = random_rational(rng, q(0), q(1), 89);
                CHECK(lhs.eval(x) == rhs.eval(x));
            }
        } catch (const CapExceeded&) {
            continue;
        }
    }
}

TEST_CASE("scaled tents peak at beta") {
    PwlMap half = tent_scaled(q(1, 2));
    CHECK(half.eval(q(1, 2)) == q(1, 2));
    CHECK(half.eval(q(1, 4)) == q(1, 4));
    CHECK(extensionally_equal(tent_scaled(q(1)), tent_map()));
    CHECK_THROWS_AS(tent_scaled(q(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(tent_scaled(q(0)), std::invalid_argument);
}

TEST_CASE("truncated tents") {
    CHECK(extensionally_equal(truncate_tent(q(1)), tent_map()));
    PwlMap th = truncate_tent(q(6, 7));
    CHECK(th.eval(q(1, 2)) == q(6, 7));
    CHECK(th.eval(q(3, 7)) == q(6, 7));
    CHECK(th.eval(q(1, 4)) == q(1, 2));

    PwlMap dt = doubly_truncate(q(2, 7), q(6, 7));
    CHECK(dt.eval(q(1, 2)) == q(6, 7));
    CHECK(dt.eval(q(1, 14)) == q(2, 7));
    CHECK(dt.eval(q(2, 7)) == q(4, 7));
    CHECK_THROWS_AS(doubly_truncate(q(1, 2), q(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(truncate_tent(q(0)), std::invalid_argument);
}

TEST_CASE("doubly truncated values stay in [a,b] (property)") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Rational a = random_rational(rng, q(1, 100), q(2, 5), 60);
        Rational b = random_rational(rng, q(1, 2), q(99, 100), 60);
        PwlMap dt = doubly_truncate(a, b);
        for (int s = 0; s < 30; ++s) {
            Rational x = random_rational(rng, q(0), q(1), 73);
            Rational y = dt.eval(x);
            CHECK(a <= y);
            CHECK(y <= b);
        }
    }
}

TEST_CASE("orbits of a clamped tent are orbits of the tent itself") {
    PwlMap t = tent_map();
    for (auto [a, b] : {std::pair{q(2, 7), q(6, 7)}, std::pair{q(2, 5), q(4, 5)},
                        std::pair{q(1, 3), q(8, 9)}}) {
        PwlMap dt = doubly_truncate(a, b);
        MapPowers pw(dt);
        int found = 0;
        for (int n = 1; n <= 6; ++n) {
            for (const auto& o : orbits_of_period(pw, n)) {
                ++found;
                for (const auto& x : o.points) CHECK(dt.eval(x) == t.eval(x));
            }
        }
        CHECK(found > 0);
    }
}

TEST_CASE("slope-sign classification") {
    CHECK(unimodal_class(tent_map()) == Unimodal::strictly_unimodal);
    CHECK(unimodal_class(truncate_tent(q(6, 7))) == Unimodal::weakly_unimodal);
    CHECK(unimodal_class(example_g()) == Unimodal::strictly_unimodal);
    PwlMap zig(unit(), {{q(0), q(0)}, {q(1, 4), q(1, 2)}, {q(1, 3), q(1, 4)},
                        {q(1, 2), q(1)}, {q(1), q(0)}});
    CHECK(unimodal_class(zig) == Unimodal::not_unimodal);
}

TEST_CASE("normalization removes collinear interior nodes only") {
    PwlMap padded(unit(), {{q(0), q(0)}, {q(1, 4), q(1, 2)}, {q(1, 2), q(1)}, {q(1), q(0)}});
    CHECK(padded.normalized().nodes().size() == 3);
    PwlMap plateau = truncate_tent(q(1, 2));
    CHECK(plateau.normalized().nodes().size() == plateau.nodes().size());
}
