#include "pwldyn/acceptance.hpp"

#include "pwldyn/construct.hpp"
#include "pwldyn/generators.hpp"
#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/sharkovsky.hpp"
#include "pwldyn/solve.hpp"
#include "pwldyn/towers.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace pwldyn {

namespace {

struct Check {
    std::ostringstream log;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "FAILED: " << what << "; ";
        }
    }
    template <typename T>
    void expect_eq(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) {
            ok = false;
            log << "FAILED: " << what << "; ";
        }
    }
};

std::vector<Rational> orbit_rats(std::initializer_list<const char*> strs) {
    std::vector<Rational> out;
    for (const char* s : strs) out.push_back(Rational::parse(s));
    return out;
}

void c1_g_golden(Check& c) {
    ConstructionContext ctx = base_context(example_g(), orbit_rats({"0", "1/2", "1"}));
    c.expect_eq(ctx.d, Rational(1, 6), "d = 1/6");
    c.expect_eq(ctx.v, Rational(1, 2), "v = 1/2");
    c.expect_eq(ctx.z, Rational(2, 3), "z = 2/3");
    c.expect_eq(ctx.z0, Rational(2, 3), "z0 = 2/3");
    c.expect_eq(ctx.u1, Rational(5, 12), "u1 = 5/12");
    Layer1 L = build_layer1(ctx, 2);
    c.expect_eq(L.c[0].value, Rational(1, 3), "c_2 = 1/3");
    c.expect_eq(L.c[1].value, Rational(2, 9), "c_4 = 2/9");
    c.expect_eq(L.u[1].value, Rational(11, 48), "u_2 = 11/48");
    c.expect_eq(L.bar_c[0].value, Rational(5, 9), "bar c_4 = 5/9");
    Compartment plain1 = layer2_compartment(ctx, Family::plain, 1, 1);
    c.expect_eq(plain1.d_points[0].value, Rational(7, 24), "u'_{1,1} = 7/24");
}

void c2_g_orbits(Check& c) {
    MapPowers g(example_g());
    auto p4 = orbits_of_period(g, 4);
    c.expect_eq(p4.size(), std::size_t(1), "exactly one period-4 orbit");
    if (p4.size() == 1)
        c.expect(p4[0].points == orbit_rats({"2/9", "5/9", "13/18", "8/9"}),
                 "period-4 orbit is {2/9, 13/18, 5/9, 8/9}");
    auto p6 = orbits_of_period(g, 6);
    c.expect_eq(p6.size(), std::size_t(2), "exactly two period-6 orbits");
    for (const auto& o : p6)
        for (const auto& x : o.points)
            c.expect(x >= Rational(1, 6), "period-6 points lie in [1/6, 1]");
}

void c3_remark3(Check& c) {
    ConstructionContext ctx = base_context(example_g(), orbit_rats({"0", "1/2", "1"}));
    auto pts = remark3_points(ctx, 0);
    c.expect_eq(pts[0].claimed_least_period.value_or(-1), 6, "labeled period 2m = 6");
    c.expect_eq(pts[0].actual_least_period.value_or(-1), 3, "actual least period 3");
}

void c4_tent_counts(Check& c) {
    MapPowers tent(tent_map());
    Interval unit(Rational(0), Rational(1));
    for (int k = 1; k <= 12; ++k) {
        RootSet fixed = solve_iter_fixed(tent, k, unit);
        c.expect(fixed.all_points(), "fixed sets of tent iterates are finite");
        c.expect_eq(fixed.size(), std::size_t(1) << k,
                    "|{x : T^" + std::to_string(k) + "(x) = x}| = 2^" + std::to_string(k));
    }
    auto p2 = orbits_of_period(tent, 2);
    c.expect(p2.size() == 1 && p2[0].points == orbit_rats({"2/5", "4/5"}),
             "unique period-2 orbit {2/5, 4/5}");
    auto p3 = orbits_of_period(tent, 3);
    c.expect_eq(p3.size(), std::size_t(2), "exactly two period-3 orbits");
    Orbit s = smallest_diameter_orbit(tent, 3);
    c.expect(s.points == orbit_rats({"2/7", "4/7", "6/7"}), "P_3 = {2/7, 4/7, 6/7}");
}

void c5_witness_maps(Check& c) {
    MapPowers tent(tent_map());
    for (int k = 2; k <= 8; ++k) {
        Orbit pk = smallest_diameter_orbit(tent, k);
        PwlMap w = minimal_witness_map(k);
        MapPowers wp(w);
        auto orbits = orbits_of_period(wp, k);
        c.expect(orbits.size() == 1 && orbits[0].points == pk.points,
                 "witness " + std::to_string(k) + " has exactly the orbit P_k");
        std::set<int> expected{k};
        for (auto n : sharkovsky_successors(std::uint64_t(k), 10)) expected.insert(int(n));
        c.expect_eq(period_set(wp, 10), expected,
                    "witness " + std::to_string(k) + " period set");
    }
}

void c6_closure(Check& c) {
    std::vector<PwlMap> maps{tent_map(), example_g(), truncate_tent(Rational(2, 3)),
                             truncate_tent(Rational(6, 7)), truncate_tent(Rational(1))};
    for (int k = 2; k <= 8; ++k) maps.push_back(minimal_witness_map(k));
    for (const auto& f : maps) {
        auto rep = verify_closure(f, 8);
        c.expect(rep.pass, "closure holds on a catalog map");
    }
    std::mt19937 rng(20240811);
    int done = 0, attempts = 0;
    while (done < 200 && attempts < 4000) {
        ++attempts;
        PwlMap f = random_endomorphism(rng, 6, 48);
        try {
            auto rep = verify_closure(f, 8);
            c.expect(rep.pass, "closure holds on random endomorphism #" + std::to_string(done));
            ++done;
        } catch (const CapExceeded&) {
        } catch (const InfinitePeriodicSet&) {
        }
    }
    c.expect(done == 200, "200 random maps verified (got " + std::to_string(done) + ")");
}

void c7_power2(Check& c) {
    Power2Approx a = power2_map_approx(2);
    c.expect(a.q0 <= Rational(2, 5), "q0 <= 2/5");
    c.expect(Rational(4, 5) <= a.q1, "4/5 <= q1");
    std::set<int> ps = period_set(a.map, 8);
    for (int n : ps) c.expect(n == 1 || n == 2 || n == 4 || n == 8, "period set within powers of 2");
    for (int n : {1, 2, 4}) c.expect(ps.count(n) == 1, "period " + std::to_string(n) + " present");
}

void c8_nested(Check& c) {
    c.expect(verify_nested(tent_map(), 6).pass, "tent orbits nested up to 6");
    c.expect(verify_nested(example_g(), 6).pass, "example-g orbits nested up to 6");
}

void c9_layer1(Check& c) {
    ConstructionContext g = base_context(example_g(), orbit_rats({"0", "1/2", "1"}));
    ConstructionContext t =
        base_context(tent_map(), orbit_rats({"2/7", "4/7", "6/7"}));
    for (const auto* ctx : {&g, &t}) {
        Layer1 L = build_layer1(*ctx, 4);
        c.expect(L.pass, "layer-1 claims and ordering chain hold");
        for (const auto* p : L.all_points()) {
            if (p->claimed_least_period)
                c.expect(p->verified, "claim verified for " + p->label);
        }
    }
}

void c10_towers(Check& c) {
    ConstructionContext g = base_context(example_g(), orbit_rats({"0", "1/2", "1"}));
    ConstructionContext t =
        base_context(tent_map(), orbit_rats({"2/7", "4/7", "6/7"}));
    for (const auto* ctx : {&g, &t}) {
        Tower tw = assemble_tower(*ctx, 2, 2, 2);
        std::string tag = ctx == &g ? " (g)" : " (tent)";
        c.expect(tw.pass, "tower layers 2-3 verify" + tag);
        if (!tw.pass) {
            for (const auto& v : tw.violations) c.log << v << "; ";
            for (const auto& comp : tw.compartments)
                for (const auto& v : comp.violations) c.log << v << "; ";
        }
        for (int n = 1; n <= 3; ++n) {
            c.expect(verify_nonexistence(*ctx, Lemma::L4, {n}).pass,
                     "L4(n=" + std::to_string(n) + ")" + tag);
            c.expect(verify_nonexistence(*ctx, Lemma::L4bar, {n}).pass,
                     "L4bar(n=" + std::to_string(n) + ")" + tag);
        }
        c.expect(verify_nonexistence(*ctx, Lemma::L8, {1, 1}).pass, "L8(1,1)" + tag);
        c.expect(verify_nonexistence(*ctx, Lemma::L12, {1, 1, 1}).pass, "L12(1,1,1)" + tag);
    }
}

void c11_solver_equivalence(Check& c) {
    std::mt19937 rng(424242);
    Interval unit(Rational(0), Rational(1));
    int done = 0, attempts = 0;
    while (done < 100 && attempts < 2000) {
        ++attempts;
        PwlMap f = random_endomorphism(rng, 6, 32);
        std::uniform_int_distribution<int> dk(1, 8);
        int k = dk(rng);
        Rational cc = random_rational(rng, Rational(0), Rational(1), 64);
        try {
            MapPowers pw(f);
            RootSet a = solve_iter_eq_const(pw, k, cc, unit, SolveStrategy::explicit_iterate);
            RootSet b = solve_iter_eq_const(pw, k, cc, unit, SolveStrategy::pullback);
            c.expect(a == b, "strategies agree on triple #" + std::to_string(done));
            for (int s = 0; s < 1000; ++s) {
                Rational x = random_rational(rng, Rational(0), Rational(1), 997);
                bool member = a.contains(x);
                bool satisfies = pw.eval_pow(k, x) == cc;
                if (member != satisfies) {
                    c.expect(false, "membership mismatch at x = " + x.str());
                    break;
                }
            }
            ++done;
        } catch (const CapExceeded&) {
        }
    }
    c.expect(done == 100, "100 random triples checked (got " + std::to_string(done) + ")");
}

void c12_order_laws(Check& c) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> d(1, 1000000);
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t m = d(rng), n = d(rng);
        auto mn = sharkovsky_compare(m, n);
        auto nm = sharkovsky_compare(n, m);
        if (m == n) {
            if (mn != SharkOrder::equals) {
                c.expect(false, "reflexivity");
                return;
            }
        } else if (!((mn == SharkOrder::precedes && nm == SharkOrder::follows) ||
                     (mn == SharkOrder::follows && nm == SharkOrder::precedes))) {
            c.expect(false, "antisymmetry/totality at " + std::to_string(m) + "," +
                                std::to_string(n));
            return;
        }
        std::uint64_t a = d(rng), b = d(rng), e = d(rng);
        if (sharkovsky_compare(a, b) == SharkOrder::precedes &&
            sharkovsky_compare(b, e) == SharkOrder::precedes &&
            sharkovsky_compare(a, e) != SharkOrder::precedes) {
            c.expect(false, "transitivity");
            return;
        }
        std::uint64_t h = d(rng);
        if (h != 3) c.expect(sharkovsky_compare(3, h) == SharkOrder::precedes, "3 is the head");
        if (h != 1) c.expect(sharkovsky_compare(h, 1) == SharkOrder::precedes, "1 is the tail");
    }
    c.expect(sharkovsky_compare(8, 4) == SharkOrder::precedes, "8 before 4");
    c.expect(sharkovsky_compare(4, 2) == SharkOrder::precedes, "4 before 2");
    c.expect(sharkovsky_compare(2, 1) == SharkOrder::precedes, "2 before 1");
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<void(Check&)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only) {
    std::vector<Criterion> criteria{
        {1, "g golden table (d, c2, u1, v, z, z0, c4, u2, bar-c4, u'_{1,1})", 1.0, c1_g_golden},
        {2, "g orbit facts (one period-4 orbit, two period-6 orbits in [1/6,1])", 5.0,
         c2_g_orbits},
        {3, "degenerate outer point: c'*_6 of g has least period 3", 1.0, c3_remark3},
        {4, "tent counts: |Fix T^k| = 2^k (k <= 12), unique Q_2, P_3", 30.0, c4_tent_counts},
        {5, "clamped witness maps k = 2..8: unique P_k, exact period sets", 120.0,
         c5_witness_maps},
        {6, "period-set closure on catalog + 200 random endomorphisms (N = 8)", 300.0,
         c6_closure},
        {7, "power-of-two clamp at depth 2: bounds and period set", 120.0, c7_power2},
        {8, "nested hulls on tent and g up to period 6, f(max P) = min P", 60.0, c8_nested},
        {9, "tower layer 1 on both contexts, n <= 4: claims and chain", 120.0, c9_layer1},
        {10, "tower layers 2-3 (n,k <= 2), hulls, L4/L8/L12 interval checks", 600.0,
         c10_towers},
        {11, "solver equivalence on 100 random triples + membership sampling", 120.0,
         c11_solver_equivalence},
        {12, "Sharkovsky order laws on 10^5 random pairs, head and tail", 10.0,
         c12_order_laws},
    };
    std::vector<CriterionResult> results;
    for (const auto& cr : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
        Check chk;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(chk);
        } catch (const std::exception& e) {
            chk.ok = false;
            chk.log << "exception: " << e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        CriterionResult res;
        res.id = cr.id;
        res.name = cr.name;
        res.seconds = std::chrono::duration<double>(t1 - t0).count();
        res.pass = chk.ok;
        if (res.seconds > cr.budget_seconds) {
            res.pass = false;
            chk.log << "budget exceeded (" << res.seconds << " s > " << cr.budget_seconds
                    << " s); ";
        }
        res.detail = chk.log.str();
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace pwldyn
