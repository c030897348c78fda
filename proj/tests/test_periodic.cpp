#include "pwldyn/generators.hpp"
#include "pwldyn/periodic.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace pwldyn;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }

std::vector<Rational> pts(std::initializer_list<const char*> ss) {
    std::vector<Rational> out;
    for (auto* s : ss) out.push_back(Rational::parse(s));
    return out;
}
}  // namespace

TEST_CASE("least periods by direct orbit walks") {
    PwlMap t = tent_map();
    PwlMap g = example_g();
    CHECK(least_period(t, q(2, 5), 4) == 2);
    CHECK(least_period(g, q(2, 9), 4) == 4);
    CHECK(least_period(t, q(2, 3), 6) == 1);
    CHECK(!least_period(t, q(1, 3), 4).has_value());
}

TEST_CASE("orbit enumeration and grouping") {
    MapPowers tent(tent_map());
    auto p2 = orbits_of_period(tent, 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].points == pts({"2/5", "4/5"}));
    CHECK(p2[0].diameter == q(2, 5));

    auto p3 = orbits_of_period(tent, 3);
    REQUIRE(p3.size() == 2);
    CHECK(p3[0].points == pts({"2/9", "4/9", "8/9"}));  // ordered by smallest point
    CHECK(p3[1].points == pts({"2/7", "4/7", "6/7"}));
    // Images must cycle within each orbit.
    for (const auto& o : p3) {
        for (const auto& x : o.points) {
            Rational y = tent_map().eval(x);
            CHECK(std::count(o.points.begin(), o.points.end(), y) == 1);
        }
    }

    MapPowers g(example_g());
    auto p6 = orbits_of_period(g, 6);
    CHECK(p6.size() == 2);
    for (const auto& o : p6)
        for (const auto& x : o.points) CHECK(x >= q(1, 6));
}

TEST_CASE("period sets by independent per-n enumeration") {
    CHECK(period_set(tent_map(), 4) == std::set<int>{1, 2, 3, 4});
    CHECK(period_set(doubly_truncate(q(2, 5), q(4, 5)), 4) == std::set<int>{1, 2});
    CHECK(period_set(truncate_tent(q(2, 3)), 3) == std::set<int>{1});
}

TEST_CASE("fixed points of f^n partition into divisor-period orbits (tent)") {
    MapPowers tent(tent_map());
    for (int n = 1; n <= 10; ++n) {
        long total = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            total += long(d) * long(orbits_of_period(tent, d).size());
        }
        CHECK(total == (1L << n));
    }
}

TEST_CASE("smallest-diameter orbit and tie-break") {
    MapPowers tent(tent_map());
    Orbit p3 = smallest_diameter_orbit(tent, 3);
    CHECK(p3.points == pts({"2/7", "4/7", "6/7"}));
    CHECK(p3.diameter == q(4, 7));
    // Both fixed points have diameter zero; the smaller minimum wins.
    Orbit p1 = smallest_diameter_orbit(tent, 1);
    CHECK(p1.points == pts({"0"}));
    Orbit p2 = smallest_diameter_orbit(tent, 2);
    CHECK(p2.points == pts({"2/5", "4/5"}));
}

TEST_CASE("h-values: least maximum over period-m orbits") {
    MapPowers tent(tent_map());
    CHECK(h_value(tent, 2) == q(4, 5));
    CHECK(h_value(tent, 3) == q(6, 7));
    CHECK(h_value(tent, 1) == q(0));
}

TEST_CASE("period arithmetic under iteration") {
    CHECK(iterate_period(6, 2) == 3);
    CHECK(iterate_period(3, 2) == 3);
    CHECK(iterate_period(8, 4) == 2);
    CHECK(lift_periods(2, 2) == std::set<long>{4});
    CHECK(lift_periods(3, 2) == std::set<long>{3, 6});
    CHECK(lift_periods(1, 6) == std::set<long>{1, 2, 3, 6});
    // A period-2j point of f^{2^{i-1}} forces a period-2^i j point of f:
    // every divisor s > 1 of the power of two shares a factor with 2j.
    for (long i = 2; i <= 5; ++i) {
        for (long j : {1L, 3L, 5L}) {
            CHECK(lift_periods(2 * j, 1L << (i - 1)) == std::set<long>{(1L << i) * j});
        }
    }
}

TEST_CASE("least period of x under f^n is m/gcd(m,n) (property)") {
    std::mt19937 rng(31);
    int done = 0;
    while (done < 12) {
        PwlMap f = random_endomorphism(rng, 4, 16);
        try {
            MapPowers pw(f);
            for (int m = 1; m <= 5; ++m) {
                auto orbits = orbits_of_period(pw, m);
                if (orbits.empty()) continue;
                const Rational& x = orbits.front().points.front();
                for (int n = 1; n <= 6; ++n) {
                    // Direct walk under f^n.
                    Rational y = x;
                    int t = 0;
                    do {
                        y = pw.eval_pow(n, y);
                        ++t;
                    } while (y != x && t <= m);
                    REQUIRE(y == x);
                    CHECK(t == iterate_period(m, n));
                }
                ++done;
                break;
            }
        } catch (const CapExceeded&) {
        } catch (const InfinitePeriodicSet&) {
        }
    }
}

TEST_CASE("every root of f^n(x) = x has least period dividing n (property)") {
    std::mt19937 rng(32);
    int done = 0;
    while (done < 10) {
        PwlMap f = random_endomorphism(rng, 5, 20);
        try {
            MapPowers pw(f);
            for (int n = 1; n <= 6; ++n) {
                RootSet r = solve_iter_fixed(pw, n, f.domain());
                for (const auto& comp : r.components()) {
                    if (!comp.is_point()) continue;
                    auto lp = least_period(f, comp.lo, n);
                    REQUIRE(lp.has_value());
                    CHECK(n % *lp == 0);
                }
            }
            ++done;
        } catch (const CapExceeded&) {
        }
    }
}

TEST_CASE("a period-2 orbit may sit entirely inside the decreasing lap") {
    // The decreasing lap acts order-reversingly, so its square fixes a
    // 2-cycle without forcing it across the peak.  The nesting conclusion
    // and f(max P) = min P still hold; only the straddle check trips, and
    // the report must say exactly that.
    PwlMap f(Interval(q(0), q(1)),
             {{q(0), q(0)}, {q(1, 2), q(1)}, {q(13, 20), q(7, 10)},
              {q(3, 4), q(37, 60)}, {q(1), q(8, 15)}});
    REQUIRE(unimodal_class(f) == Unimodal::strictly_unimodal);
    MapPowers pw(f);
    auto two = orbits_of_period(pw, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].points == pts({"3/5", "4/5"}));
    CHECK(two[1].points == pts({"51/80", "29/40"}));
    for (const auto& o : two) CHECK(o.min() > q(1, 2));
    auto rep = verify_nested(f, 4);
    CHECK(!rep.pass);
    REQUIRE(rep.violations.size() == 2);
    for (const auto& v : rep.violations)
        CHECK(v.find("straddle") != std::string::npos);
    // The two cycles nest around the interior fixed point.
    CHECK(two[0].min() < two[1].min());
    CHECK(two[1].max() < two[0].max());
}

TEST_CASE("a slope-one fixed segment is reported, never truncated") {
    PwlMap f(Interval(q(0), q(1)),
             {{q(0), q(0)}, {q(1, 4), q(1, 4)}, {q(1, 2), q(1, 4)}, {q(1), q(1, 2)}});
    CHECK_THROWS_AS(orbits_of_period(f, 1), InfinitePeriodicSet);
    CHECK_THROWS_AS(period_set(f, 3), InfinitePeriodicSet);
}

TEST_CASE("nested hulls on unimodal maps") {
    auto t = verify_nested(tent_map(), 6);
    CHECK(t.pass);
    CHECK(t.orbit_count > 0);
    auto g = verify_nested(example_g(), 6);
    CHECK(g.pass);
    // Spot check the containment the report certifies.
    MapPowers tent(tent_map());
    Orbit q2 = orbits_of_period(tent, 2)[0];
    Orbit q3 = smallest_diameter_orbit(tent, 3);
    CHECK(q3.min() < q2.min());
    CHECK(q2.max() < q3.max());
    PwlMap zig(Interval(q(0), q(1)), {{q(0), q(1, 2)}, {q(1, 4), q(0)}, {q(1, 2), q(1)},
                                      {q(1), q(0)}});
    CHECK_THROWS_AS(verify_nested(zig, 4), std::invalid_argument);
}
