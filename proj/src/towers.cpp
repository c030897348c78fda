#include "pwldyn/towers.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace pwldyn {

using detail::ChainChecker;
using detail::extremal_root;
using detail::idx;
using detail::make_point;
using detail::verify_claim;

namespace {

bool odd_section(Family fam) {
    return fam == Family::tilde || fam == Family::breve || fam == Family::hat;
}

/// Exponent of the family's layer-1 recursion step at index n: f^{m+2n} on
/// the odd-period sections, f^{2n} on the even-period ones.
int base_exponent(const ConstructionContext& ctx, Family fam, int n) {
    return odd_section(fam) ? ctx.m + 2 * n : 2 * n;
}

int min_n(Family fam) { return fam == Family::tilde ? 0 : 1; }

/// Layer-1 d-point sequences, one solve per index.
Rational layer1_dpoint(const ConstructionContext& ctx, Family fam, int n) {
    int k = base_exponent(ctx, fam, n);
    switch (fam) {
        case Family::tilde:
            return extremal_root(ctx, k, false, ctx.d, Interval(ctx.min_p, ctx.d),
                                 Side::maximum, "tilde.mu'");
        case Family::plain:
            return extremal_root(ctx, k, false, ctx.d, Interval(ctx.d, ctx.v), Side::minimum,
                                 "u_n");
        case Family::breve:
            return extremal_root(ctx, k, false, ctx.d, Interval(ctx.breve_u0, ctx.v),
                                 Side::minimum, "breve.mu");
        case Family::hat:
            return extremal_root(ctx, k, false, ctx.d, Interval(ctx.v, ctx.hat_u0),
                                 Side::maximum, "hat.mu'");
        case Family::bar:
            return extremal_root(ctx, k, false, ctx.d, Interval(ctx.v, ctx.z0), Side::maximum,
                                 "ubar'_n");
    }
    throw std::logic_error("unreachable");
}

/// Whether the layer's d-point sequence is min-type (ascending nu scan) and
/// the solving side for d-points at that layer.
Side layer2_d_side(Family fam) {
    switch (fam) {
        case Family::tilde:
        case Family::hat:
        case Family::bar: return Side::minimum;
        default: return Side::maximum;  // plain, breve
    }
}

Side layer3_d_side(Family fam) {
    return layer2_d_side(fam) == Side::minimum ? Side::maximum : Side::minimum;
}

Interval layer2_window(const ConstructionContext& ctx, Family fam, int n) {
    Rational a = layer1_dpoint(ctx, fam, n);
    Rational b = layer1_dpoint(ctx, fam, n + 1);
    switch (fam) {
        case Family::tilde:
        case Family::hat:
        case Family::bar: return Interval(a, b);   // layer-1 d-points ascend
        default: return Interval(b, a);            // plain, breve: they descend
    }
}

Rational layer2_dpoint(const ConstructionContext& ctx, Family fam, int n, int i,
                       const Interval& window) {
    return extremal_root(ctx, base_exponent(ctx, fam, n) + 2 * i, false, ctx.d, window,
                         layer2_d_side(fam), std::string(family_name(fam)) + " layer-2 d-point");
}

Interval layer3_window(const ConstructionContext& ctx, Family fam, int n, int k) {
    Interval w2 = layer2_window(ctx, fam, n);
    Rational a = layer2_dpoint(ctx, fam, n, k, w2);
    Rational b = layer2_dpoint(ctx, fam, n, k + 1, w2);
    // Min-type layer-2 sequences descend, max-type ascend.
    return layer2_d_side(fam) == Side::minimum ? Interval(b, a) : Interval(a, b);
}

/// Search window the auxiliary point is drawn from: the stretch between the
/// family's anchor and the section boundary where f^K(x) = v has a root.
Interval nu_search_window(const ConstructionContext& ctx, Family fam, const Rational& anchor) {
    switch (fam) {
        case Family::tilde: return Interval(anchor, ctx.d);
        case Family::plain: return Interval(ctx.d, anchor);
        case Family::breve: return Interval(ctx.breve_u0, anchor);
        case Family::hat: return Interval(anchor, ctx.hat_u0);
        case Family::bar: return Interval(anchor, ctx.z0);
    }
    throw std::logic_error("unreachable");
}

LabeledPoint select_nu(const ConstructionContext& ctx, Family fam, std::string label,
                       int exponent, const Interval& search, const Interval& sandwich,
                       Side preferred) {
    RootSet roots = solve_iter_eq_const(*ctx.powers, exponent, ctx.v, search);
    std::vector<Rational> cands;
    for (const auto& c : roots.components()) {
        cands.push_back(c.lo);
        if (!c.is_point()) cands.push_back(c.hi);
    }
    if (preferred == Side::maximum) std::reverse(cands.begin(), cands.end());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (sandwich.lo < cands[i] && cands[i] < sandwich.hi) {
            LabeledPoint p = make_point(std::move(label), fam, cands[i], std::nullopt, false);
            p.chosen_root_index = int(i);
            return p;
        }
    }
    throw std::logic_error("aux_nu: no root of f^" + std::to_string(exponent) +
                           "(x) = v satisfies the sandwich (" + sandwich.lo.str() + ", " +
                           sandwich.hi.str() + ")");
}

struct SeqSpec {
    std::string kind;  // "p", "q", "c", "c'"
    int expo_base = 0;  // claimed period = expo_base + 2 i
    Interval window;
    Side side;
    std::function<bool(int)> guaranteed;
    std::function<std::optional<int>(int)> fallback = [](int) { return std::nullopt; };
};

std::vector<LabeledPoint> build_seq(const ConstructionContext& ctx, Family fam,
                                    const std::string& tag, const SeqSpec& spec, int count) {
    std::vector<LabeledPoint> out;
    for (int i = 1; i <= count; ++i) {
        int period = spec.expo_base + 2 * i;
        std::string label =
            std::string(family_name(fam)) + "." + spec.kind + tag + idx({period});
        Rational val = extremal_root(ctx, period, true, {}, spec.window, spec.side, label);
        LabeledPoint p = make_point(std::move(label), fam, val, period, spec.guaranteed(i),
                                    spec.fallback(i));
        verify_claim(ctx, p);
        out.push_back(std::move(p));
    }
    return out;
}

void check_monotone(ChainChecker& cc, const std::vector<LabeledPoint>& seq, bool increasing) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (increasing)
            cc.require_lt(seq[i], seq[i + 1]);
        else
            cc.require_lt(seq[i + 1], seq[i]);
    }
}

void check_hulls(Compartment& comp) {
    struct Hull {
        bool empty = true;
        Rational lo, hi;
        int seq = 0;
    };
    std::vector<Hull> hulls;
    for (int s = 0; s < 3; ++s) {
        Hull h;
        h.seq = s;
        for (int i = 0; i < int(comp.sequences[std::size_t(s)].size()); ++i) {
            bool excluded = std::count(comp.hull_exclusions.begin(), comp.hull_exclusions.end(),
                                       std::make_pair(s, i + 1)) > 0;
            if (excluded) continue;
            const Rational& v = comp.sequences[std::size_t(s)][std::size_t(i)].value;
            if (h.empty) {
                h.lo = h.hi = v;
                h.empty = false;
            } else {
                h.lo = std::min(h.lo, v);
                h.hi = std::max(h.hi, v);
            }
        }
        if (!h.empty) hulls.push_back(h);
    }
    comp.hulls_disjoint = true;
    for (std::size_t a = 0; a < hulls.size(); ++a) {
        for (std::size_t b = a + 1; b < hulls.size(); ++b) {
            if (!(hulls[a].hi < hulls[b].lo || hulls[b].hi < hulls[a].lo)) {
                comp.hulls_disjoint = false;
                comp.violations.push_back(
                    "convex hulls of " + comp.sequence_names[std::size_t(hulls[a].seq)] +
                    " and " + comp.sequence_names[std::size_t(hulls[b].seq)] + " overlap");
            }
        }
    }
}

void finish(Compartment& comp) {
    check_hulls(comp);
    bool claims_ok = comp.nu.verified;
    for (const auto& p : comp.d_points) claims_ok &= p.verified;
    for (const auto& s : comp.sequences)
        for (const auto& p : s) claims_ok &= p.verified;
    comp.pass = claims_ok && comp.violations.empty() && comp.hulls_disjoint;
}

}  // namespace

LabeledPoint aux_nu(const ConstructionContext& ctx, Family fam, int n, int layer3_k) {
    Rational anchor1 = layer1_dpoint(ctx, fam, n);
    if (layer3_k < 0) {
        Interval sandwich = layer2_window(ctx, fam, n);
        std::string label = std::string(family_name(fam)) + ".nu(" + std::to_string(n) + ",2)";
        return select_nu(ctx, fam, std::move(label), base_exponent(ctx, fam, n),
                         nu_search_window(ctx, fam, anchor1), sandwich,
                         layer2_d_side(fam));
    }
    int k = layer3_k;
    Interval w2 = layer2_window(ctx, fam, n);
    Rational anchor2 = layer2_dpoint(ctx, fam, n, k, w2);
    Interval sandwich = layer3_window(ctx, fam, n, k);
    // The layer-3 search runs between the layer-1 anchor and the k-th
    // layer-2 d-point, on the side the family's geometry dictates.
    bool anchor_above = layer2_d_side(fam) == Side::maximum;  // plain, breve
    Interval search = anchor_above ? Interval(anchor2, anchor1) : Interval(anchor1, anchor2);
    std::string label = std::string(family_name(fam)) + ".nu(" + std::to_string(n) + "," +
                        std::to_string(k) + ",3)";
    return select_nu(ctx, fam, std::move(label), base_exponent(ctx, fam, n) + 2 * k, search,
                     sandwich, layer3_d_side(fam));
}

Compartment layer2_compartment(const ConstructionContext& ctx, Family fam, int n, int count) {
    if (n < min_n(fam))
        throw std::invalid_argument("layer2_compartment: n out of range for family");
    if (count < 1) throw std::invalid_argument("layer2_compartment: count must be >= 1");
    Compartment comp;
    comp.family = fam;
    comp.layer = 2;
    comp.n = n;
    const int m = ctx.m;
    const int K = base_exponent(ctx, fam, n);
    const Interval W = layer2_window(ctx, fam, n);
    comp.window_lo = W.lo;
    comp.window_hi = W.hi;
    const std::string tag = "(" + std::to_string(n) + ",2)";
    auto always = [](int) { return true; };
    auto none = [](int) { return std::optional<int>{}; };

    comp.nu = aux_nu(ctx, fam, n);
    for (int i = 1; i <= count; ++i) {
        Rational dp = layer2_dpoint(ctx, fam, n, i, W);
        std::string label;
        switch (fam) {
            case Family::tilde: label = "tilde.mu" + idx({m, n, i}); break;
            case Family::plain: label = "plain.u'" + idx({n, i}); break;
            case Family::breve: label = "breve.mu'" + idx({m, n, i}); break;
            case Family::hat: label = "hat.mu" + idx({m, n, i}); break;
            case Family::bar: label = "bar.u" + idx({n, i}); break;
        }
        comp.d_points.push_back(make_point(label, fam, dp, std::nullopt, false));
    }
    const Rational& D1 = comp.d_points.front().value;

    ChainChecker cc;
    cc.require_lt("window.lo", W.lo, comp.nu.label, comp.nu.value);
    cc.require_lt(comp.nu.label, comp.nu.value, "window.hi", W.hi);

    if (fam == Family::tilde) {
        comp.sequence_names = {"tilde.p", "tilde.c", "tilde.c'"};
        auto guar_c = [n](int i) { return i >= n + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"p", K, W, Side::minimum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c", K + m, Interval(D1, W.hi), Side::minimum, guar_c, none}, count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c'", K + m, W, Side::maximum, guar_c, none}, count);
        comp.hull_exclusions.push_back({0, 1});  // tilde.p at i=1 is left out
        const auto& P = comp.sequences[0];
        const auto& C = comp.sequences[1];
        const auto& Cp = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, false);
        check_monotone(cc, P, false);
        check_monotone(cc, C, false);
        check_monotone(cc, Cp, true);
        cc.require_lt("window.lo", W.lo, D.back().label, D.back().value);
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(D[std::size_t(i) - 1], P[std::size_t(i) - 1]);
            if (i >= 2) cc.require_lt(P[std::size_t(i) - 1], D[std::size_t(i) - 2]);
        }
        cc.require_lt(P.front(), comp.nu);
        cc.require_lt(D.front().label, D1, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back().label, Cp.back().value, "window.hi", W.hi);
    } else if (fam == Family::plain) {
        comp.sequence_names = {"plain.p", "plain.q", "plain.c'"};
        auto guar_c = [n](int i) { return i != n; };
        auto fb_c = [n](int i) { return i == n ? std::optional<int>(2 * n) : std::nullopt; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"p", K + m, W, Side::minimum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"q", K + m, Interval(W.lo, D1), Side::maximum, always, none}, count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c'", K, W, Side::maximum, guar_c, fb_c}, count);
        const auto& P = comp.sequences[0];
        const auto& Q = comp.sequences[1];
        const auto& Cp = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, true);
        check_monotone(cc, P, false);
        check_monotone(cc, Q, true);
        check_monotone(cc, Cp, true);
        cc.require_lt("window.lo", W.lo, P.back().label, P.back().value);
        cc.require_lt(P.front(), comp.nu);
        cc.require_lt(comp.nu, Q.front());
        cc.require_lt(Q.back(), D.front());
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(D[std::size_t(i) - 1], Cp[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(Cp[std::size_t(i) - 1], D[std::size_t(i)]);
        }
        cc.require_lt(Cp.back().label, Cp.back().value, "window.hi", W.hi);
    } else if (fam == Family::breve) {
        comp.sequence_names = {"breve.q", "breve.c'", "breve.c"};
        auto guar_c = [n](int i) { return i >= n + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"q", K, W, Side::maximum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c'", K + m, Interval(W.lo, D1), Side::maximum, guar_c, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c", K + m, W, Side::minimum, guar_c, none}, count);
        const auto& Qb = comp.sequences[0];
        const auto& Cp = comp.sequences[1];
        const auto& C = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, true);
        check_monotone(cc, Qb, true);
        check_monotone(cc, Cp, true);
        check_monotone(cc, C, false);
        cc.require_lt("window.lo", W.lo, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back(), D.front());
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(D[std::size_t(i) - 1], Qb[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(Qb[std::size_t(i) - 1], D[std::size_t(i)]);
        }
        cc.require_lt(Qb.back().label, Qb.back().value, "window.hi", W.hi);
    } else if (fam == Family::hat) {
        comp.sequence_names = {"hat.p", "hat.c", "hat.c'"};
        auto guar_c = [m, n](int i) { return i >= m + n + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"p", K, W, Side::minimum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c", K + m, Interval(D1, W.hi), Side::minimum, guar_c, none}, count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c'", K + m, W, Side::maximum, guar_c, none}, count);
        const auto& P = comp.sequences[0];
        const auto& C = comp.sequences[1];
        const auto& Cp = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, false);
        check_monotone(cc, P, false);
        check_monotone(cc, C, false);
        check_monotone(cc, Cp, true);
        cc.require_lt("window.lo", W.lo, P.back().label, P.back().value);
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(P[std::size_t(i) - 1], D[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(D[std::size_t(i)], P[std::size_t(i) - 1]);
        }
        cc.require_lt(D.front().label, D1, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back().label, Cp.back().value, "window.hi", W.hi);
        cc.require_lt(D.front().label, D1, comp.nu.label, comp.nu.value);
    } else {  // bar
        comp.sequence_names = {"bar.c", "bar.p", "bar.q"};
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"c", K, W, Side::minimum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"p", K + m, Interval(D1, W.hi), Side::minimum, always, none}, count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"q", K + m, W, Side::maximum, always, none}, count);
        const auto& C = comp.sequences[0];
        const auto& P = comp.sequences[1];
        const auto& Q = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, false);
        check_monotone(cc, C, false);
        check_monotone(cc, P, false);
        check_monotone(cc, Q, true);
        cc.require_lt(D.front().label, D1, comp.nu.label, comp.nu.value);
        cc.require_lt("window.lo", W.lo, C.back().label, C.back().value);
        cc.require_lt(C.front(), D.front());
        cc.require_lt(D.front().label, D1, P.back().label, P.back().value);
        cc.require_lt(P.front(), comp.nu);
        cc.require_lt(comp.nu, Q.front());
        cc.require_lt(Q.back().label, Q.back().value, "window.hi", W.hi);
        // Positions of bar.c relative to the deeper d-points are not pinned
        // down; they are reported, not asserted.
    }
    cc.append_to(comp.violations);
    finish(comp);
    return comp;
}

Compartment layer3_compartment(const ConstructionContext& ctx, Family fam, int n, int k,
                               int count) {
    if (n < min_n(fam))
        throw std::invalid_argument("layer3_compartment: n out of range for family");
    if (k < 1 || count < 1)
        throw std::invalid_argument("layer3_compartment: k and count must be >= 1");
    Compartment comp;
    comp.family = fam;
    comp.layer = 3;
    comp.n = n;
    comp.k = k;
    const int m = ctx.m;
    const int K = base_exponent(ctx, fam, n) + 2 * k;
    const Interval W = layer3_window(ctx, fam, n, k);
    comp.window_lo = W.lo;
    comp.window_hi = W.hi;
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ",3)";
    auto always = [](int) { return true; };
    auto none = [](int) { return std::optional<int>{}; };
    Side d_side = layer3_d_side(fam);

    comp.nu = aux_nu(ctx, fam, n, k);
    for (int i = 1; i <= count; ++i) {
        Rational dp = extremal_root(ctx, K + 2 * i, false, ctx.d, W, d_side,
                                    std::string(family_name(fam)) + " layer-3 d-point");
        std::string label;
        switch (fam) {
            case Family::tilde: label = "tilde.mu'" + idx({m, n, k, i}); break;
            case Family::plain: label = "plain.u" + idx({n, k, i}); break;
            case Family::breve: label = "breve.mu" + idx({m, n, k, i}); break;
            case Family::hat: label = "hat.mu'" + idx({m, n, k, i}); break;
            case Family::bar: label = "bar.u'" + idx({n, k, i}); break;
        }
        comp.d_points.push_back(make_point(label, fam, dp, std::nullopt, false));
    }
    const Rational& D1 = comp.d_points.front().value;

    ChainChecker cc;
    cc.require_lt("window.lo", W.lo, comp.nu.label, comp.nu.value);
    cc.require_lt(comp.nu.label, comp.nu.value, "window.hi", W.hi);

    if (fam == Family::tilde) {
        comp.sequence_names = {"tilde.q", "tilde.c'", "tilde.c"};
        auto guar_c = [n, k](int i) { return i >= n + k + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"q", K, W, Side::maximum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c'", K + m, Interval(W.lo, D1), Side::maximum, guar_c, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c", K + m, W, Side::minimum, guar_c, none}, count);
        comp.hull_exclusions.push_back({0, 1});  // tilde.q at i=1 is left out
        const auto& Q = comp.sequences[0];
        const auto& Cp = comp.sequences[1];
        const auto& C = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, true);
        check_monotone(cc, Q, true);
        check_monotone(cc, Cp, true);
        check_monotone(cc, C, false);
        cc.require_lt("window.lo", W.lo, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back(), D.front());
        cc.require_lt(comp.nu.label, comp.nu.value, D.front().label, D1);
        for (int i = 2; i <= count; ++i) {
            cc.require_lt(D[std::size_t(i) - 2], Q[std::size_t(i) - 1]);
            cc.require_lt(Q[std::size_t(i) - 1], D[std::size_t(i) - 1]);
        }
        cc.require_lt(D.back().label, D.back().value, "window.hi", W.hi);
    } else if (fam == Family::plain) {
        comp.sequence_names = {"plain.c", "plain.p", "plain.q"};
        // The unique 1 <= i <= n with 2n | 2n+2k+2i, when it exists, may
        // collapse to period 2n; i = n+k may collapse to period 2n+2k.
        int iota = (n - (k % n ? k % n : n)) % n;
        if (iota == 0) iota = n;
        bool iota_valid = (2 * n + 2 * k + 2 * iota) % (2 * n) == 0;
        auto guar_c = [n, k, iota, iota_valid](int i) {
            return !((iota_valid && i == iota) || i == n + k);
        };
        auto fb_c = [n, k, iota, iota_valid](int i) -> std::optional<int> {
            if (iota_valid && i == iota) return 2 * n;
            if (i == n + k) return 2 * n + 2 * k;
            return std::nullopt;
        };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"c", K, W, Side::minimum, guar_c, fb_c}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"p", K + m, Interval(D1, W.hi), Side::minimum, always, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"q", K + m, W, Side::maximum, always, none}, count);
        const auto& C = comp.sequences[0];
        const auto& P = comp.sequences[1];
        const auto& Q = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, false);
        check_monotone(cc, C, false);
        check_monotone(cc, P, false);
        check_monotone(cc, Q, true);
        cc.require_lt("window.lo", W.lo, C.back().label, C.back().value);
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(C[std::size_t(i) - 1], D[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(D[std::size_t(i)], C[std::size_t(i) - 1]);
        }
        cc.require_lt(D.front().label, D1, P.back().label, P.back().value);
        cc.require_lt(P.front(), comp.nu);
        cc.require_lt(comp.nu, Q.front());
        cc.require_lt(Q.back().label, Q.back().value, "window.hi", W.hi);
        cc.require_lt(D.front().label, D1, comp.nu.label, comp.nu.value);
    } else if (fam == Family::breve) {
        comp.sequence_names = {"breve.p", "breve.c", "breve.c'"};
        auto guar_c = [n, k](int i) { return i >= n + k + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"p", K, W, Side::minimum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c", K + m, Interval(D1, W.hi), Side::minimum, guar_c, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c'", K + m, W, Side::maximum, guar_c, none}, count);
        const auto& P = comp.sequences[0];
        const auto& C = comp.sequences[1];
        const auto& Cp = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, false);
        check_monotone(cc, P, false);
        check_monotone(cc, C, false);
        check_monotone(cc, Cp, true);
        cc.require_lt("window.lo", W.lo, P.back().label, P.back().value);
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(P[std::size_t(i) - 1], D[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(D[std::size_t(i)], P[std::size_t(i) - 1]);
        }
        cc.require_lt(D.front().label, D1, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back().label, Cp.back().value, "window.hi", W.hi);
        cc.require_lt(D.front().label, D1, comp.nu.label, comp.nu.value);
    } else if (fam == Family::hat) {
        comp.sequence_names = {"hat.q", "hat.c'", "hat.c"};
        auto guar_c = [n, k](int i) { return i >= n + k + 3; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"q", K, W, Side::maximum, always, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"c'", K + m, Interval(W.lo, D1), Side::maximum, guar_c, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"c", K + m, W, Side::minimum, guar_c, none}, count);
        const auto& Q = comp.sequences[0];
        const auto& Cp = comp.sequences[1];
        const auto& C = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, true);
        check_monotone(cc, Q, true);
        check_monotone(cc, Cp, true);
        check_monotone(cc, C, false);
        cc.require_lt("window.lo", W.lo, C.back().label, C.back().value);
        cc.require_lt(C.front(), comp.nu);
        cc.require_lt(comp.nu, Cp.front());
        cc.require_lt(Cp.back(), D.front());
        for (int i = 1; i <= count; ++i) {
            cc.require_lt(D[std::size_t(i) - 1], Q[std::size_t(i) - 1]);
            if (i < count) cc.require_lt(Q[std::size_t(i) - 1], D[std::size_t(i)]);
        }
        cc.require_lt(D.back().label, D.back().value, "window.hi", W.hi);
        cc.require_lt(comp.nu.label, comp.nu.value, D.front().label, D1);
    } else {  // bar
        comp.sequence_names = {"bar.c'", "bar.q", "bar.p"};
        auto guar_c = [n, k](int i) { return i >= n + k + 2; };
        comp.sequences[0] =
            build_seq(ctx, fam, tag, {"c'", K, W, Side::maximum, guar_c, none}, count);
        comp.sequences[1] = build_seq(
            ctx, fam, tag, {"q", K + m, Interval(W.lo, D1), Side::maximum, always, none},
            count);
        comp.sequences[2] =
            build_seq(ctx, fam, tag, {"p", K + m, W, Side::minimum, always, none}, count);
        const auto& Cp = comp.sequences[0];
        const auto& Q = comp.sequences[1];
        const auto& P = comp.sequences[2];
        const auto& D = comp.d_points;
        check_monotone(cc, D, true);
        check_monotone(cc, Cp, true);
        check_monotone(cc, Q, true);
        check_monotone(cc, P, false);
        cc.require_lt(comp.nu.label, comp.nu.value, D.front().label, D1);
        cc.require_lt(D.back().label, D.back().value, "window.hi", W.hi);
        cc.require_lt("window.lo", W.lo, P.back().label, P.back().value);
        cc.require_lt(P.front(), comp.nu);
        cc.require_lt(comp.nu, Q.front());
        cc.require_lt(Q.back(), D.front());
        for (int i = 1; i <= count; ++i)
            cc.require_lt(D[std::size_t(i) - 1], Cp[std::size_t(i) - 1]);
        cc.require_lt(Cp.back().label, Cp.back().value, "window.hi", W.hi);
    }
    cc.append_to(comp.violations);
    finish(comp);
    return comp;
}

namespace {

std::set<int> least_periods_in(const ConstructionContext& ctx, const Interval& window,
                               int bound, bool exclude_hi) {
    std::set<int> found;
    for (int t = 1; t <= bound; ++t) {
        RootSet roots = solve_iter_fixed(*ctx.powers, t, window);
        for (const auto& comp : roots.components()) {
            if (!comp.is_point())
                throw InfinitePeriodicSet("interval of period-" + std::to_string(t) +
                                          " points inside the lemma window");
            if (exclude_hi && comp.lo == window.hi) continue;
            auto lp = least_period(ctx.map, comp.lo, t);
            if (lp && *lp == t) found.insert(t);
        }
    }
    return found;
}

}  // namespace

NonexistenceReport verify_nonexistence(const ConstructionContext& ctx, Lemma lemma,
                                       const std::vector<int>& indices) {
    NonexistenceReport rep;
    switch (lemma) {
        case Lemma::L4: {
            if (indices.size() != 1) throw std::invalid_argument("L4 takes one index (n)");
            int n = indices[0];
            Rational un = layer1_dpoint(ctx, Family::plain, n);
            rep.lemma = "L4(n=" + std::to_string(n) + ") on [d, u_n]";
            rep.window_lo = ctx.d;
            rep.window_hi = un;
            rep.bound = 2 * n + 1;
            rep.allowed = {2 * n};
            rep.required = {2 * n};
            rep.found = least_periods_in(ctx, Interval(ctx.d, un), rep.bound, false);
            break;
        }
        case Lemma::L4bar: {
            if (indices.size() != 1) throw std::invalid_argument("L4bar takes one index (n)");
            int n = indices[0];
            Rational un = layer1_dpoint(ctx, Family::bar, n);
            rep.lemma = "L4(n=" + std::to_string(n) + ") on [ubar'_n, z0)";
            rep.window_lo = un;
            rep.window_hi = ctx.z0;
            rep.bound = 2 * n + 1;
            rep.allowed = {};
            rep.required = {};
            rep.found = least_periods_in(ctx, Interval(un, ctx.z0), rep.bound, true);
            break;
        }
        case Lemma::L8: {
            if (indices.size() != 2) throw std::invalid_argument("L8 takes indices (n, i)");
            int n = indices[0], i = indices[1];
            Rational un = layer1_dpoint(ctx, Family::plain, n);
            Interval W = layer2_window(ctx, Family::plain, n);
            Rational uni = layer2_dpoint(ctx, Family::plain, n, i, W);
            rep.lemma = "L8(n=" + std::to_string(n) + ",i=" + std::to_string(i) +
                        ") on [u'_{n,i}, u_n]";
            rep.window_lo = uni;
            rep.window_hi = un;
            rep.bound = 2 * n + 2 * i + 1;
            rep.allowed = {2 * n, 2 * n + 2 * i};
            // The extremal fixed point of f^{2n+2i} may collapse onto a
            // period-2n point when 2n divides 2n+2i (the worked example has
            // c'_4 = c_2); presence is only certain without that escape.
            if ((2 * n + 2 * i) % (2 * n) != 0) rep.required = {2 * n + 2 * i};
            rep.found = least_periods_in(ctx, Interval(uni, un), rep.bound, false);
            break;
        }
        case Lemma::L12: {
            if (indices.size() != 3)
                throw std::invalid_argument("L12 takes indices (n, k, i)");
            int n = indices[0], k = indices[1], i = indices[2];
            Interval W2 = layer2_window(ctx, Family::plain, n);
            Rational unk = layer2_dpoint(ctx, Family::plain, n, k, W2);
            Interval W3 = layer3_window(ctx, Family::plain, n, k);
            Rational unki = extremal_root(ctx, 2 * n + 2 * k + 2 * i, false, ctx.d, W3,
                                          Side::minimum, "u_{n,k,i}");
            rep.lemma = "L12(n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                        ",i=" + std::to_string(i) + ") on [u'_{n,k}, u_{n,k,i}]";
            rep.window_lo = unk;
            rep.window_hi = unki;
            int top = 2 * n + 2 * k + 2 * i;
            rep.bound = top + 1;
            rep.allowed = {2 * n, 2 * n + 2 * k, top};
            if (top % (2 * n) != 0 && top % (2 * n + 2 * k) != 0) rep.required = {top};
            rep.found = least_periods_in(ctx, Interval(unk, unki), rep.bound, false);
            break;
        }
    }
    rep.pass = std::includes(rep.allowed.begin(), rep.allowed.end(), rep.found.begin(),
                             rep.found.end()) &&
               std::includes(rep.found.begin(), rep.found.end(), rep.required.begin(),
                             rep.required.end());
    return rep;
}

Tower assemble_tower(const ConstructionContext& ctx, int n_max, int k_max, int count) {
    if (n_max < 0) throw std::invalid_argument("assemble_tower: n_max must be >= 0");
    Tower tw;
    tw.first = build_layer1(ctx, std::max(1, n_max + 1));
    if (n_max >= 1 || count >= 1) {
        for (Family fam : {Family::tilde, Family::plain, Family::breve, Family::hat,
                           Family::bar}) {
            for (int n = min_n(fam); n <= n_max; ++n) {
                if (count >= 1) {
                    tw.compartments.push_back(layer2_compartment(ctx, fam, n, count));
                    for (int k = 1; k <= k_max; ++k)
                        tw.compartments.push_back(layer3_compartment(ctx, fam, n, k, count));
                }
            }
        }
    }

    auto add_row = [&tw](const LabeledPoint& p) {
        tw.verification.push_back({p.label, p.value, p.claimed_least_period,
                                   p.actual_least_period, p.claim_guaranteed, p.verified});
    };
    for (const auto* p : tw.first.all_points()) add_row(*p);
    for (const auto& c : tw.compartments) {
        add_row(c.nu);
        for (const auto& p : c.d_points) add_row(p);
        for (const auto& s : c.sequences)
            for (const auto& p : s) add_row(p);
    }

    // Global label uniqueness.
    std::map<std::string, int> seen;
    for (const auto& r : tw.verification) {
        if (++seen[r.label] == 2) tw.violations.push_back("duplicate label " + r.label);
    }

    // Section containment: every point lies in its section's interval and in
    // [min P, z0]; the main-text p-family lives in [u1, v].
    Rational ubar1 = layer1_dpoint(ctx, Family::bar, 1);
    auto section = [&](const TowerRow& r) -> Interval {
        if (r.label.rfind("plain.p[", 0) == 0) return Interval(ctx.u1, ctx.v);
        if (r.label.rfind("tilde.", 0) == 0) return Interval(ctx.min_p, ctx.d);
        if (r.label.rfind("plain.", 0) == 0) return Interval(ctx.d, ctx.u1);
        if (r.label.rfind("breve.", 0) == 0) return Interval(ctx.u1, ctx.v);
        if (r.label.rfind("hat.", 0) == 0) return Interval(ctx.v, ubar1);
        return Interval(ubar1, ctx.z0);
    };
    for (const auto& r : tw.verification) {
        if (!section(r).contains(r.value))
            tw.violations.push_back("point " + r.label + " = " + r.value.str() +
                                    " escapes its section");
        if (!(ctx.min_p <= r.value && r.value <= ctx.z0))
            tw.violations.push_back("point " + r.label + " leaves [min P, z0]");
    }

    tw.pass = tw.first.pass && tw.violations.empty();
    for (const auto& c : tw.compartments) tw.pass = tw.pass && c.pass;
    return tw;
}

}  // namespace pwldyn
