#include "pwldyn/towers.hpp"

#include <doctest.h>

using namespace pwldyn;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }

std::vector<Rational> pts(std::initializer_list<const char*> ss) {
    std::vector<Rational> out;
    for (auto* s : ss) out.push_back(Rational::parse(s));
    return out;
}

ConstructionContext g_ctx() { return base_context(example_g(), pts({"0", "1/2", "1"})); }
ConstructionContext tent_ctx() {
    return base_context(tent_map(), pts({"2/7", "4/7", "6/7"}));
}
}  // namespace

TEST_CASE("auxiliary point of the plain compartment at n = 1") {
    ConstructionContext ctx = g_ctx();
    LabeledPoint nu = aux_nu(ctx, Family::plain, 1);
    CHECK(nu.value == q(1, 4));  // g^2(x) = 1-2x on [0,1/2]; 1-2x = 1/2
    CHECK(nu.chosen_root_index == 0);
    // Sandwich u_2 < nu < u_1 was already enforced; confirm numerically.
    CHECK(q(11, 48) < nu.value);
    CHECK(nu.value < q(5, 12));

    ConstructionContext t = tent_ctx();
    LabeledPoint nut = aux_nu(t, Family::plain, 1);
    CHECK(t.powers->eval_pow(2, nut.value) == t.v);
}

TEST_CASE("plain layer-2 compartment of g at n = 1") {
    ConstructionContext ctx = g_ctx();
    Compartment comp = layer2_compartment(ctx, Family::plain, 1, 2);
    CHECK(comp.pass);
    CHECK(comp.d_points[0].value == q(7, 24));  // the listing's u'_{1,1}

    // sequences: plain.p, plain.q, plain.c'
    const auto& P = comp.sequences[0];
    const auto& Q = comp.sequences[1];
    const auto& Cp = comp.sequences[2];
    CHECK(P[0].claimed_least_period == 7);
    CHECK(P[0].actual_least_period == 7);
    CHECK(Q[0].claimed_least_period == 7);
    CHECK(Q[0].actual_least_period == 7);
    // c'_4 collapses onto the period-2 point c_2 = 1/3; no period-4 point here.
    CHECK(Cp[0].value == q(1, 3));
    CHECK(Cp[0].claimed_least_period == 4);
    CHECK(!Cp[0].claim_guaranteed);
    CHECK(Cp[0].fallback_least_period == 2);
    CHECK(Cp[0].actual_least_period == 2);
    CHECK(Cp[0].verified);
    // c'_6 is genuine.
    CHECK(Cp[1].claimed_least_period == 6);
    CHECK(Cp[1].claim_guaranteed);
    CHECK(Cp[1].actual_least_period == 6);
}

TEST_CASE("bar layer-2 compartment reuses the layer-1 even-period point") {
    ConstructionContext ctx = g_ctx();
    Layer1 L = build_layer1(ctx, 2);
    Compartment comp = layer2_compartment(ctx, Family::bar, 1, 2);
    CHECK(comp.pass);
    CHECK(comp.sequences[0][0].value == L.bar_c[0].value);  // bar c_4^{(1,2)} = bar c_4
}

TEST_CASE("all five families build layer-2 compartments on both contexts") {
    for (auto make : {g_ctx, tent_ctx}) {
        ConstructionContext ctx = make();
        for (Family fam : {Family::tilde, Family::plain, Family::breve, Family::hat,
                           Family::bar}) {
            Compartment comp = layer2_compartment(ctx, fam, fam == Family::tilde ? 0 : 1, 2);
            INFO(family_name(fam));
            CHECK(comp.pass);
            CHECK(comp.hulls_disjoint);
        }
    }
}

TEST_CASE("the listing's point 7/24 is the lower bound of the (1,1) layer-3 cell") {
    ConstructionContext ctx = g_ctx();
    Compartment comp = layer3_compartment(ctx, Family::plain, 1, 1, 1);
    CHECK(comp.window_lo == q(7, 24));
    CHECK(comp.pass);
}

TEST_CASE("layer-3 compartments verify at the smallest indices") {
    for (auto make : {g_ctx, tent_ctx}) {
        ConstructionContext ctx = make();
        for (Family fam : {Family::tilde, Family::plain, Family::breve, Family::hat,
                           Family::bar}) {
            Compartment comp = layer3_compartment(ctx, fam, fam == Family::tilde ? 0 : 1, 1, 1);
            INFO(family_name(fam));
            CHECK(comp.pass);
        }
    }
}

TEST_CASE("interval nonexistence checks (L4, L4bar, L8, L12)") {
    ConstructionContext g = g_ctx();
    auto l4 = verify_nonexistence(g, Lemma::L4, {2});
    CHECK(l4.pass);
    CHECK(l4.window_lo == q(1, 6));
    CHECK(l4.window_hi == q(11, 48));
    CHECK(l4.found == std::set<int>{4});  // c_4 = 2/9 and nothing else up to period 5

    ConstructionContext t = tent_ctx();
    auto l4t = verify_nonexistence(t, Lemma::L4, {1});
    CHECK(l4t.pass);
    CHECK(l4t.window_lo == q(1, 3));
    CHECK(l4t.window_hi == q(5, 12));
    CHECK(l4t.found == std::set<int>{2});  // c_2 = 2/5 must be found

    for (auto* ctx : {&g, &t}) {
        CHECK(verify_nonexistence(*ctx, Lemma::L4bar, {1}).pass);
        CHECK(verify_nonexistence(*ctx, Lemma::L8, {1, 1}).pass);
        CHECK(verify_nonexistence(*ctx, Lemma::L12, {1, 1, 1}).pass);
    }
}

TEST_CASE("tower assembly: sections, labels, verification table") {
    ConstructionContext ctx = g_ctx();
    Tower tw = assemble_tower(ctx, 2, 1, 2);
    CHECK(tw.pass);
    CHECK(tw.violations.empty());
    // The first-layer listing starts min P <= q~_3 < q~_5 < q~_7 < ... < d.
    const auto& tq = tw.first.tilde_q;
    CHECK(ctx.min_p <= tq[0].value);
    for (std::size_t i = 0; i + 1 < tq.size(); ++i) CHECK(tq[i].value < tq[i + 1].value);
    CHECK(tq.back().value < ctx.d);
    // Five families, layer-2 plus layer-3 compartments.
    int l2 = 0, l3 = 0;
    for (const auto& c : tw.compartments) (c.layer == 2 ? l2 : l3)++;
    CHECK(l2 == 3 + 4 * 2);  // tilde n=0..2, others n=1..2
    CHECK(l3 == l2);         // k = 1 for each layer-2 compartment
    CHECK(!tw.verification.empty());
}

TEST_CASE("towers verify over a period-5 base orbit") {
    ConstructionContext ctx = base_context(
        tent_map(), pts({"10/31", "18/31", "20/31", "22/31", "26/31"}));
    Tower tw = assemble_tower(ctx, 1, 1, 1);
    CHECK(tw.pass);
    // Odd-period sequences now climb in steps of two from m = 5.
    CHECK(tw.first.breve_p[0].claimed_least_period == 7);
    CHECK(tw.first.hat_q[0].claimed_least_period == 7);
}

TEST_CASE("tower with no compartments is just the first layer") {
    ConstructionContext ctx = tent_ctx();
    Tower tw = assemble_tower(ctx, 0, 0, 0);
    CHECK(tw.compartments.empty());
    CHECK(tw.pass);
}

TEST_CASE("full tower at acceptance depth on the tent context") {
    ConstructionContext ctx = tent_ctx();
    Tower tw = assemble_tower(ctx, 1, 1, 1);
    CHECK(tw.pass);
    for (const auto& comp : tw.compartments) {
        INFO(family_name(comp.family) << " n=" << comp.n << " k=" << comp.k);
        CHECK(comp.violations.empty());
    }
}
