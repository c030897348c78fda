#include "pwldyn/construct.hpp"

#include <sstream>

namespace pwldyn {

const char* family_name(Family f) {
    switch (f) {
        case Family::tilde: return "tilde";
        case Family::plain: return "plain";
        case Family::breve: return "breve";
        case Family::hat: return "hat";
        case Family::bar: return "bar";
    }
    return "?";
}

namespace detail {

Rational extremal_root(const ConstructionContext& ctx, int k, bool fixed_point,
                       const Rational& c, const Interval& window, Side side,
                       const std::string& what) {
    RootSet roots = fixed_point ? solve_iter_fixed(*ctx.powers, k, window)
                                : solve_iter_eq_const(*ctx.powers, k, c, window);
    auto r = roots.extremal(side, window);
    if (!r)
        throw std::logic_error("construction window for " + what + " is empty on [" +
                               window.lo.str() + ", " + window.hi.str() + "]");
    return *r;
}

void verify_claim(const ConstructionContext& ctx, LabeledPoint& p) {
    if (!p.claimed_least_period) {
        p.verified = true;
        return;
    }
    p.actual_least_period = least_period(ctx.map, p.value, *p.claimed_least_period);
    if (!p.actual_least_period) {
        p.verified = false;  // not even periodic with the labeled period
        return;
    }
    if (p.claim_guaranteed) {
        p.verified = *p.actual_least_period == *p.claimed_least_period;
    } else if (p.fallback_least_period) {
        p.verified = *p.actual_least_period == *p.claimed_least_period ||
                     *p.actual_least_period == *p.fallback_least_period;
    } else {
        p.verified = true;  // reported only
    }
}

void ChainChecker::require_lt(const std::string& la, const Rational& a, const std::string& lb,
                              const Rational& b) {
    if (!(a < b))
        violations_.push_back("expected " + la + " = " + a.str() + " < " + lb + " = " + b.str());
}

void ChainChecker::require_le(const std::string& la, const Rational& a, const std::string& lb,
                              const Rational& b) {
    if (!(a <= b))
        violations_.push_back("expected " + la + " = " + a.str() + " <= " + lb + " = " + b.str());
}

void ChainChecker::require_lt(const LabeledPoint& a, const LabeledPoint& b) {
    require_lt(a.label, a.value, b.label, b.value);
}

void ChainChecker::require_le(const LabeledPoint& a, const LabeledPoint& b) {
    require_le(a.label, a.value, b.label, b.value);
}

void ChainChecker::append_to(std::vector<std::string>& out) const {
    out.insert(out.end(), violations_.begin(), violations_.end());
}

std::string idx(std::initializer_list<int> is) {
    std::string s = "[";
    bool first = true;
    for (int i : is) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "]";
}

LabeledPoint make_point(std::string label, Family fam, Rational value,
                        std::optional<int> claimed, bool guaranteed,
                        std::optional<int> fallback) {
    LabeledPoint p;
    p.label = std::move(label);
    p.family = fam;
    p.value = std::move(value);
    p.claimed_least_period = claimed;
    p.claim_guaranteed = guaranteed;
    p.fallback_least_period = fallback;
    return p;
}

}  // namespace detail

using detail::ChainChecker;
using detail::extremal_root;
using detail::idx;
using detail::make_point;
using detail::verify_claim;

namespace {

// Exact guard helpers over the context's map.
bool below_identity(const ConstructionContext& ctx, int k, const Interval& w, bool clo,
                    bool chi, std::string* witness) {
    return strictly_below(ctx.pow(k), identity_map(ctx.map.domain()), w, clo, chi, witness);
}

bool below_const(const ConstructionContext& ctx, int k, const Rational& c, const Interval& w,
                 bool clo, bool chi, std::string* witness) {
    return strictly_below(ctx.pow(k), constant_map(ctx.map.domain(), c), w, clo, chi, witness);
}

bool above_const(const ConstructionContext& ctx, int k, const Rational& c, const Interval& w,
                 bool clo, bool chi, std::string* witness) {
    return strictly_below(constant_map(ctx.map.domain(), c), ctx.pow(k), w, clo, chi, witness);
}

}  // namespace

ConstructionContext base_context(const PwlMap& f, const Orbit& P) {
    ConstructionContext ctx{f, P, P.least_period, {}, {}, {}, {}, {}, {}, {}, {},
                            {}, {}, {}, nullptr};
    if (ctx.m < 3 || ctx.m % 2 == 0)
        throw std::invalid_argument("base_context: P must have odd least period >= 3");
    // Re-validate that P is a single cycle of f.
    orbit_from_points(f, P.points);
    ctx.powers = std::make_shared<MapPowers>(f);
    ctx.min_p = P.min();
    ctx.max_p = P.max();
    ctx.e = ctx.powers->eval_pow(ctx.m - 1, ctx.min_p);

    ctx.v = extremal_root(ctx, 1, false, ctx.e, Interval(ctx.min_p, ctx.e), Side::minimum, "v");
    ctx.z = extremal_root(ctx, 1, true, {}, Interval(ctx.v, ctx.e), Side::minimum, "z");
    ctx.y = extremal_root(ctx, 2, true, {}, Interval(ctx.min_p, ctx.v), Side::maximum, "y");
    ctx.z0 = extremal_root(ctx, 2, true, {}, Interval(ctx.v, ctx.z), Side::minimum, "z0");
    ctx.d = extremal_root(ctx, 2, false, ctx.z0, Interval(ctx.min_p, ctx.v), Side::maximum, "d");
    ctx.u1 = extremal_root(ctx, 2, false, ctx.d, Interval(ctx.d, ctx.v), Side::minimum, "u1");
    ctx.breve_u0 =
        extremal_root(ctx, 2, false, ctx.d, Interval(ctx.d, ctx.v), Side::maximum, "breve_u0");
    ctx.hat_u0 =
        extremal_root(ctx, 2, false, ctx.d, Interval(ctx.v, ctx.z0), Side::minimum, "hat_u0");

    auto fail = [](const std::string& msg) { throw std::logic_error("base_context: " + msg); };
    if (f.eval(ctx.v) != ctx.e) fail("f(v) != e");
    if (f.eval(ctx.z) != ctx.z) fail("z is not fixed");
    if (ctx.powers->eval_pow(2, ctx.y) != ctx.y) fail("y is not 2-periodic");
    if (f.eval(ctx.y) == ctx.y) fail("y is a fixed point, expected a genuine period-2 point");
    if (ctx.powers->eval_pow(2, ctx.z0) != ctx.z0) fail("z0 is not 2-periodic");
    if (ctx.powers->eval_pow(2, ctx.d) != ctx.z0) fail("f^2(d) != z0");

    ChainChecker cc;
    cc.require_lt("min P", ctx.min_p, "d", ctx.d);
    cc.require_lt("d", ctx.d, "y", ctx.y);
    cc.require_lt("y", ctx.y, "v", ctx.v);
    cc.require_lt("v", ctx.v, "z0", ctx.z0);
    cc.require_le("z0", ctx.z0, "z", ctx.z);
    cc.require_le("z", ctx.z, "e", ctx.e);
    cc.require_le("e", ctx.e, "max P", ctx.max_p);
    cc.require_le("u1", ctx.u1, "breve_u0", ctx.breve_u0);
    cc.require_lt("breve_u0", ctx.breve_u0, "v", ctx.v);
    cc.require_lt("v", ctx.v, "hat_u0", ctx.hat_u0);
    cc.require_lt("hat_u0", ctx.hat_u0, "z0", ctx.z0);
    if (!cc.violations().empty()) fail(cc.violations().front());

    // Guards (*), (**), (***): exact piecewise verification.
    std::string w;
    if (!below_identity(ctx, 2, Interval(ctx.v, ctx.z0), true, false, &w))
        fail("guard (*) f^2(x) < x fails on [v,z0) at x = " + w);
    if (!below_const(ctx, 2, ctx.z0, Interval(ctx.d, ctx.z0), false, false, &w))
        fail("guard (**) f^2(x) < z0 fails on (d,z0) at x = " + w);
    if (!above_const(ctx, 1, ctx.z, Interval(ctx.d, ctx.z0), false, false, &w))
        fail("guard (***) f(x) > z fails on (d,z0) at x = " + w);
    return ctx;
}

ConstructionContext base_context(const PwlMap& f, const std::vector<Rational>& orbit_points) {
    return base_context(f, orbit_from_points(f, orbit_points));
}

std::vector<LabeledPoint> u_points(const ConstructionContext& ctx, int N) {
    std::vector<LabeledPoint> out;
    for (int n = 1; n <= N; ++n) {
        Rational un = extremal_root(ctx, 2 * n, false, ctx.d, Interval(ctx.d, ctx.v),
                                    Side::minimum, "u_" + std::to_string(n));
        out.push_back(make_point("plain.u" + idx({n}), Family::plain, un, std::nullopt, false));
    }
    ChainChecker cc;
    for (int n = 1; n < N; ++n) cc.require_lt(out[std::size_t(n)], out[std::size_t(n) - 1]);
    if (N >= 1) {
        cc.require_lt("d", ctx.d, out.back().label, out.back().value);
        cc.require_lt(out.front().label, out.front().value, "v", ctx.v);
    }
    if (!cc.violations().empty())
        throw std::logic_error("u_points: " + cc.violations().front());
    // Trapping guard: d < f^{2i}(x) < z0 on (d, u_n) for 1 <= i <= n.
    for (int n = 1; n <= N; ++n) {
        Interval w(ctx.d, out[std::size_t(n) - 1].value);
        std::string wit;
        for (int i = 1; i <= n; ++i) {
            if (!above_const(ctx, 2 * i, ctx.d, w, false, false, &wit) ||
                !below_const(ctx, 2 * i, ctx.z0, w, false, false, &wit))
                throw std::logic_error("u_points: guard d < f^" + std::to_string(2 * i) +
                                       " < z0 fails on (d, u_" + std::to_string(n) +
                                       ") at x = " + wit);
        }
    }
    return out;
}

std::vector<LabeledPoint> bar_u_points(const ConstructionContext& ctx, int N) {
    std::vector<LabeledPoint> out;
    for (int n = 1; n <= N; ++n) {
        Rational un = extremal_root(ctx, 2 * n, false, ctx.d, Interval(ctx.v, ctx.z0),
                                    Side::maximum, "ubar'_" + std::to_string(n));
        out.push_back(make_point("bar.u'" + idx({n}), Family::bar, un, std::nullopt, false));
    }
    ChainChecker cc;
    for (int n = 1; n < N; ++n) cc.require_lt(out[std::size_t(n) - 1], out[std::size_t(n)]);
    if (N >= 1) {
        cc.require_lt("v", ctx.v, out.front().label, out.front().value);
        cc.require_lt(out.back().label, out.back().value, "z0", ctx.z0);
    }
    if (!cc.violations().empty())
        throw std::logic_error("bar_u_points: " + cc.violations().front());
    // Monotone-image guard: v < f^{2n-2}(x) < ... < f^2(x) < x on [ubar'_n, z0).
    for (int n = 1; n <= N; ++n) {
        Interval w(out[std::size_t(n) - 1].value, ctx.z0);
        std::string wit;
        const PwlMap ident = identity_map(ctx.map.domain());
        if (n >= 2) {
            if (!strictly_below(constant_map(ctx.map.domain(), ctx.v), ctx.pow(2 * n - 2), w,
                                true, false, &wit))
                throw std::logic_error("bar_u_points: guard v < f^" + std::to_string(2 * n - 2) +
                                       " fails on [ubar'_n, z0) at x = " + wit);
        }
        for (int j = 1; j <= n - 1; ++j) {
            const PwlMap& higher = ctx.pow(2 * j);
            bool ok = j == 1 ? strictly_below(higher, ident, w, true, false, &wit)
                             : strictly_below(higher, ctx.pow(2 * j - 2), w, true, false, &wit);
            if (!ok)
                throw std::logic_error("bar_u_points: monotone-image guard fails at x = " + wit);
        }
        // The chain always ends with f^2(x) < x.
        if (!strictly_below(ctx.pow(2), ident, w, true, false, &wit))
            throw std::logic_error("bar_u_points: f^2(x) < x fails on [ubar'_n, z0) at x = " +
                                   wit);
    }
    return out;
}

std::vector<const LabeledPoint*> Layer1::all_points() const {
    std::vector<const LabeledPoint*> out;
    for (const auto* seq : {&tilde_mu, &u, &breve_mu, &hat_mu, &bar_u, &tilde_q, &c, &breve_p,
                            &hat_q, &bar_c, &p_main}) {
        for (const auto& p : *seq) out.push_back(&p);
    }
    return out;
}

Layer1 build_layer1(const ConstructionContext& ctx, int N) {
    if (N < 1) throw std::invalid_argument("layer1: N must be >= 1");
    Layer1 L;
    const int m = ctx.m;
    Interval sec_tilde(ctx.min_p, ctx.d);
    Interval sec_plain(ctx.d, ctx.v);
    Interval sec_breve(ctx.breve_u0, ctx.v);
    Interval sec_hat(ctx.v, ctx.hat_u0);
    Interval sec_bar_c(ctx.v, ctx.z0);

    for (int n = 0; n <= N; ++n) {
        Rational mu = extremal_root(ctx, m + 2 * n, false, ctx.d, sec_tilde, Side::maximum,
                                    "tilde.mu'");
        L.tilde_mu.push_back(
            make_point("tilde.mu'" + idx({m, n}), Family::tilde, mu, std::nullopt, false));
        Rational q = extremal_root(ctx, m + 2 * n, true, {}, sec_tilde, Side::maximum, "tilde.q");
        L.tilde_q.push_back(
            make_point("tilde.q" + idx({m + 2 * n}), Family::tilde, q, m + 2 * n, true));
    }
    L.u = u_points(ctx, N);
    L.bar_u = bar_u_points(ctx, N);
    for (int n = 1; n <= N; ++n) {
        Rational c = extremal_root(ctx, 2 * n, true, {}, sec_plain, Side::minimum, "c");
        L.c.push_back(make_point("plain.c" + idx({2 * n}), Family::plain, c, 2 * n, true));

        Rational bmu = extremal_root(ctx, m + 2 * n, false, ctx.d, sec_breve, Side::minimum,
                                     "breve.mu");
        L.breve_mu.push_back(
            make_point("breve.mu" + idx({m, n}), Family::breve, bmu, std::nullopt, false));
        Rational bp = extremal_root(ctx, m + 2 * n, true, {}, sec_breve, Side::minimum, "breve.p");
        L.breve_p.push_back(
            make_point("breve.p" + idx({m + 2 * n}), Family::breve, bp, m + 2 * n, true));

        Rational hmu = extremal_root(ctx, m + 2 * n, false, ctx.d, sec_hat, Side::maximum,
                                     "hat.mu'");
        L.hat_mu.push_back(
            make_point("hat.mu'" + idx({m, n}), Family::hat, hmu, std::nullopt, false));
        Rational hq = extremal_root(ctx, m + 2 * n, true, {}, sec_hat, Side::maximum, "hat.q");
        L.hat_q.push_back(make_point("hat.q" + idx({m + 2 * n}), Family::hat, hq, m + 2 * n, true));

        Rational bc = extremal_root(ctx, 2 * n + 2, true, {},
                                    Interval(L.bar_u[std::size_t(n) - 1].value, ctx.z0),
                                    Side::minimum, "bar.c");
        L.bar_c.push_back(make_point("bar.c" + idx({2 * n + 2}), Family::bar, bc, 2 * n + 2, true));

        Rational pm = extremal_root(ctx, m + 2 * n, true, {}, Interval(ctx.u1, ctx.v),
                                    Side::minimum, "p");
        L.p_main.push_back(
            make_point("plain.p" + idx({m + 2 * n}), Family::plain, pm, m + 2 * n, true));
    }

    for (auto* seq : {&L.tilde_q, &L.c, &L.breve_p, &L.hat_q, &L.bar_c, &L.p_main}) {
        for (auto& p : *seq) verify_claim(ctx, p);
    }

    // Figure-1 ordering chain, section by section.
    ChainChecker cc;
    cc.require_le("min P", ctx.min_p, L.tilde_q[0].label, L.tilde_q[0].value);
    for (int n = 0; n <= N; ++n) {
        cc.require_lt(L.tilde_q[std::size_t(n)], L.tilde_mu[std::size_t(n)]);
        if (n < N) cc.require_lt(L.tilde_mu[std::size_t(n)], L.tilde_q[std::size_t(n) + 1]);
    }
    cc.require_lt(L.tilde_mu[std::size_t(N)].label, L.tilde_mu[std::size_t(N)].value, "d",
                  ctx.d);
    cc.require_lt("d", ctx.d, L.c[std::size_t(N) - 1].label, L.c[std::size_t(N) - 1].value);
    for (int n = N; n >= 1; --n) {
        cc.require_lt(L.c[std::size_t(n) - 1], L.u[std::size_t(n) - 1]);
        if (n > 1) cc.require_lt(L.u[std::size_t(n) - 1], L.c[std::size_t(n) - 2]);
    }
    cc.require_le(L.u[0].label, L.u[0].value, "breve_u0", ctx.breve_u0);
    cc.require_lt("breve_u0", ctx.breve_u0, L.breve_p[std::size_t(N) - 1].label,
                  L.breve_p[std::size_t(N) - 1].value);
    for (int n = N; n >= 1; --n) {
        cc.require_lt(L.breve_p[std::size_t(n) - 1], L.breve_mu[std::size_t(n) - 1]);
        if (n > 1) cc.require_lt(L.breve_mu[std::size_t(n) - 1], L.breve_p[std::size_t(n) - 2]);
    }
    cc.require_lt(L.breve_mu[0].label, L.breve_mu[0].value, "v", ctx.v);
    cc.require_lt("v", ctx.v, L.hat_mu[0].label, L.hat_mu[0].value);
    for (int n = 1; n <= N; ++n) {
        cc.require_lt(L.hat_mu[std::size_t(n) - 1], L.hat_q[std::size_t(n) - 1]);
        if (n < N) cc.require_lt(L.hat_q[std::size_t(n) - 1], L.hat_mu[std::size_t(n)]);
    }
    cc.require_lt(L.hat_q[std::size_t(N) - 1].label, L.hat_q[std::size_t(N) - 1].value,
                  "hat_u0", ctx.hat_u0);
    cc.require_le("hat_u0", ctx.hat_u0, L.bar_u[0].label, L.bar_u[0].value);
    for (int n = 1; n <= N; ++n) {
        cc.require_lt(L.bar_u[std::size_t(n) - 1], L.bar_c[std::size_t(n) - 1]);
        if (n < N) cc.require_lt(L.bar_c[std::size_t(n) - 1], L.bar_u[std::size_t(n)]);
    }
    cc.require_lt(L.bar_c[std::size_t(N) - 1].label, L.bar_c[std::size_t(N) - 1].value, "z0",
                  ctx.z0);
    // Main-text p-family: u1 < ... < p_{m+4} < p_{m+2} < v.
    cc.require_lt("u1", ctx.u1, L.p_main[std::size_t(N) - 1].label,
                  L.p_main[std::size_t(N) - 1].value);
    for (int n = N; n > 1; --n)
        cc.require_lt(L.p_main[std::size_t(n) - 1], L.p_main[std::size_t(n) - 2]);
    cc.require_lt(L.p_main[0].label, L.p_main[0].value, "v", ctx.v);

    cc.append_to(L.violations);
    L.pass = L.violations.empty();
    for (const auto* p : L.all_points())
        if (!p->verified) L.pass = false;
    return L;
}

std::vector<LabeledPoint> remark3_points(const ConstructionContext& ctx, int count) {
    std::vector<LabeledPoint> out;
    const int m = ctx.m;
    for (int i = 0; i <= count; ++i) {
        Rational c = extremal_root(ctx, 2 * m + 2 * i, true, {}, Interval(ctx.min_p, ctx.d),
                                   Side::maximum, "tilde.c'*");
        LabeledPoint p = make_point("tilde.c'*" + idx({2 * m + 2 * i}), Family::tilde, c,
                                    2 * m + 2 * i, i >= 1,
                                    i == 0 ? std::optional<int>(m) : std::nullopt);
        verify_claim(ctx, p);
        out.push_back(std::move(p));
    }
    ChainChecker cc;
    for (int i = 1; i < count; ++i) cc.require_lt(out[std::size_t(i)], out[std::size_t(i) + 1]);
    if (count >= 1)
        cc.require_lt(out.back().label, out.back().value, "d", ctx.d);
    if (!cc.violations().empty())
        throw std::logic_error("remark3_points: " + cc.violations().front());
    return out;
}

}  // namespace pwldyn
