#include "pwldyn/sharkovsky.hpp"

#include <doctest.h>

#include <random>

using namespace pwldyn;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("ordering agrees with the printed chain") {
    auto prec = [](std::uint64_t m, std::uint64_t n) {
        return sharkovsky_compare(m, n) == SharkOrder::precedes;
    };
    CHECK(prec(3, 5));
    CHECK(prec(5, 7));
    CHECK(prec(9, 6));       // odd block before 2·odd block
    CHECK(prec(14, 12));     // 2·7 before 2^2·3
    CHECK(prec(18, 12));     // 2·9 before 2^2·3
    CHECK(prec(12, 8));      // 2^2·3 before the pure powers
    CHECK(prec(8, 4));
    CHECK(prec(4, 2));
    CHECK(prec(2, 1));
    CHECK(sharkovsky_compare(6, 6) == SharkOrder::equals);
    CHECK(sharkovsky_compare(5, 3) == SharkOrder::follows);
}

TEST_CASE("successor listing stays in order") {
    CHECK(sharkovsky_successors(3, 8) == std::vector<std::uint64_t>{5, 7, 6, 8, 4, 2, 1});
    CHECK(sharkovsky_successors(1, 100).empty());
    CHECK(sharkovsky_successors(4, 8) == std::vector<std::uint64_t>{2, 1});
}

TEST_CASE("total order laws on random pairs (property)") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::uint64_t> d(1, 1000000);
    for (int i = 0; i < 5000; ++i) {
        std::uint64_t m = d(rng), n = d(rng), k = d(rng);
        auto mn = sharkovsky_compare(m, n);
        auto nm = sharkovsky_compare(n, m);
        if (m == n) {
            CHECK(mn == SharkOrder::equals);
        } else {
            CHECK(mn != SharkOrder::equals);
            CHECK((mn == SharkOrder::precedes) == (nm == SharkOrder::follows));
        }
        if (sharkovsky_compare(m, n) == SharkOrder::precedes &&
            sharkovsky_compare(n, k) == SharkOrder::precedes)
            CHECK(sharkovsky_compare(m, k) == SharkOrder::precedes);
        if (m != 3) CHECK(sharkovsky_compare(3, m) == SharkOrder::precedes);
        if (m != 1) CHECK(sharkovsky_compare(m, 1) == SharkOrder::precedes);
    }
}

TEST_CASE("closure reports") {
    auto t = verify_closure(tent_map(), 10);
    CHECK(t.pass);
    CHECK(t.periods == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

    auto c = verify_closure(doubly_truncate(q(2, 7), q(6, 7)), 8);
    CHECK(c.pass);
    CHECK(c.periods == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8});

    auto f = verify_closure(truncate_tent(q(2, 3)), 6);
    CHECK(f.pass);
    CHECK(f.periods == std::set<int>{1});
}

TEST_CASE("minimal witness maps") {
    CHECK(extensionally_equal(minimal_witness_map(3), doubly_truncate(q(2, 7), q(6, 7))));
    CHECK(extensionally_equal(minimal_witness_map(2), doubly_truncate(q(2, 5), q(4, 5))));
    CHECK(extensionally_equal(minimal_witness_map(1),
                              constant_map(Interval(q(0), q(1)), q(2, 3))));
    CHECK(period_set(minimal_witness_map(1), 4) == std::set<int>{1});

    MapPowers tent(tent_map());
    for (int k : {2, 3, 4}) {
        PwlMap w = minimal_witness_map(k);
        auto orbits = orbits_of_period(w, k);
        REQUIRE(orbits.size() == 1);
        CHECK(orbits[0].points == smallest_diameter_orbit(tent, k).points);
        std::set<int> expect{k};
        for (auto n : sharkovsky_successors(std::uint64_t(k), 10)) expect.insert(int(n));
        CHECK(period_set(w, 10) == expect);
    }
}

TEST_CASE("clamped and height-truncated witnesses share the period-m orbit") {
    MapPowers tent(tent_map());
    for (int m : {2, 3, 5, 6}) {
        PwlMap clamp = minimal_witness_map(m);
        PwlMap height = truncate_tent(h_value(tent, m));
        auto a = orbits_of_period(clamp, m);
        auto b = orbits_of_period(height, m);
        REQUIRE(a.size() == 1);
        REQUIRE(b.size() == 1);
        CHECK(a[0].points == b[0].points);
        // They agree on every forced period as well, orbit for orbit.
        MapPowers pa(clamp), pb(height);
        for (std::uint64_t n : sharkovsky_successors(std::uint64_t(m), 8)) {
            if (n < 2) continue;
            auto oa = orbits_of_period(pa, int(n));
            auto ob = orbits_of_period(pb, int(n));
            REQUIRE(oa.size() == ob.size());
            for (std::size_t i = 0; i < oa.size(); ++i) CHECK(oa[i].points == ob[i].points);
        }
    }
}

TEST_CASE("power-of-two clamp at depth 1") {
    Power2Approx a = power2_map_approx(1);
    CHECK(a.q0 >= q(2, 7));
    CHECK(a.q1 <= q(6, 7));
    CHECK(a.q0 <= q(2, 5));
    CHECK(q(4, 5) <= a.q1);
    CHECK(extensionally_equal(a.map, doubly_truncate(a.q0, a.q1)));
    REQUIRE(a.chain.size() == 2);
    CHECK(a.chain[0].least_period == 3);
    CHECK(a.chain[1].least_period == 6);
}
