#include "pwldyn/solve.hpp"

#include <algorithm>

namespace pwldyn {

RootSet preimage(const PwlMap& f, const Interval& target) {
    std::vector<Interval> parts;
    const auto& nodes = f.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const PwlNode& a = nodes[i];
        const PwlNode& b = nodes[i + 1];
        if (a.y == b.y) {
            if (target.contains(a.y)) parts.emplace_back(a.x, b.x);
            continue;
        }
        Rational s = (b.y - a.y) / (b.x - a.x);
        // Solve a.y + s (x - a.x) ∈ [target.lo, target.hi] on [a.x, b.x].
        Rational xl = a.x + (target.lo - a.y) / s;
        Rational xh = a.x + (target.hi - a.y) / s;
        if (xl > xh) std::swap(xl, xh);
        Rational lo = std::max(xl, a.x);
        Rational hi = std::min(xh, b.x);
        if (lo <= hi) parts.emplace_back(lo, hi);
    }
    return RootSet::canonical(std::move(parts));
}

MapPowers::MapPowers(PwlMap f) {
    pows_.push_back(std::move(f));
    if (!pows_.front().is_endomorphism())
        throw std::invalid_argument("MapPowers: map is not a self-map");
}

const PwlMap& MapPowers::pow(int k) {
    if (k < 1) throw std::invalid_argument("MapPowers: k must be >= 1");
    while (int(pows_.size()) < k) pows_.push_back(compose(base(), pows_.back()));
    return pows_[std::size_t(k) - 1];
}

Rational MapPowers::eval_pow(int k, Rational x) const {
    for (int i = 0; i < k; ++i) x = base().eval(x);
    return x;
}

RootSet solve_eq_const_on(const PwlMap& F, const Rational& c, const Interval& window) {
    std::vector<Interval> parts;
    const auto& nodes = F.nodes();
    // Binary search the first piece that can intersect the window.
    auto first = std::upper_bound(nodes.begin(), nodes.end(), window.lo,
                                  [](const Rational& v, const PwlNode& n) { return v < n.x; });
    std::size_t i = first == nodes.begin() ? 0 : std::size_t(first - nodes.begin()) - 1;
    for (; i + 1 < nodes.size() && nodes[i].x <= window.hi; ++i) {
        const PwlNode& a = nodes[i];
        const PwlNode& b = nodes[i + 1];
        if (a.y == b.y) {
            if (a.y == c) {
                Rational lo = std::max(a.x, window.lo);
                Rational hi = std::min(b.x, window.hi);
                if (lo <= hi) parts.emplace_back(lo, hi);
            }
            continue;
        }
        Rational s = (b.y - a.y) / (b.x - a.x);
        Rational x = a.x + (c - a.y) / s;
        if (x >= a.x && x <= b.x && window.contains(x)) parts.push_back(Interval::point(x));
    }
    return RootSet::canonical(std::move(parts));
}

RootSet solve_fixed_on(const PwlMap& F, const Interval& window) {
    std::vector<Interval> parts;
    const auto& nodes = F.nodes();
    auto first = std::upper_bound(nodes.begin(), nodes.end(), window.lo,
                                  [](const Rational& v, const PwlNode& n) { return v < n.x; });
    std::size_t i = first == nodes.begin() ? 0 : std::size_t(first - nodes.begin()) - 1;
    for (; i + 1 < nodes.size() && nodes[i].x <= window.hi; ++i) {
        const PwlNode& a = nodes[i];
        const PwlNode& b = nodes[i + 1];
        Rational s = (b.y - a.y) / (b.x - a.x);
        if (s == Rational(1)) {
            if (a.y == a.x) {
                // The whole piece satisfies F(x) = x.
                Rational lo = std::max(a.x, window.lo);
                Rational hi = std::min(b.x, window.hi);
                if (lo <= hi) parts.emplace_back(lo, hi);
            }
            continue;
        }
        // a.y + s (x - a.x) = x  =>  x = (a.y - s a.x) / (1 - s)
        Rational x = (a.y - s * a.x) / (Rational(1) - s);
        if (x >= a.x && x <= b.x && window.contains(x)) parts.push_back(Interval::point(x));
    }
    return RootSet::canonical(std::move(parts));
}

namespace {

RootSet pullback_solve(const PwlMap& f, int k, const Rational& c, const Interval& window) {
    // Work backwards: S_j = {x : f^j(x) = c}; preimages propagate interval
    // components as intervals.  Clipping to the window is only valid at the end.
    RootSet s = RootSet::canonical({Interval::point(c)});
    for (int j = 0; j < k; ++j) {
        RootSet next;
        for (const auto& comp : s.components()) next = next.united(preimage(f, comp));
        s = next;
        if (s.empty()) break;
    }
    return s.intersect(window);
}

}  // namespace

RootSet solve_iter_eq_const(MapPowers& f, int k, const Rational& c, const Interval& window,
                            SolveStrategy strategy) {
    if (k < 1) throw std::invalid_argument("solve: k must be >= 1");
    switch (strategy) {
        case SolveStrategy::explicit_iterate:
            return solve_eq_const_on(f.pow(k), c, window);
        case SolveStrategy::pullback:
            return pullback_solve(f.base(), k, c, window);
        case SolveStrategy::automatic:
        default:
            try {
                return solve_eq_const_on(f.pow(k), c, window);
            } catch (const CapExceeded&) {
                return pullback_solve(f.base(), k, c, window);
            }
    }
}

RootSet solve_iter_eq_const(const PwlMap& f, int k, const Rational& c, const Interval& window,
                            SolveStrategy strategy) {
    if (strategy == SolveStrategy::pullback) return pullback_solve(f, k, c, window);
    MapPowers pw(f);
    return solve_iter_eq_const(pw, k, c, window, strategy);
}

RootSet solve_iter_fixed(MapPowers& f, int k, const Interval& window) {
    if (k < 1) throw std::invalid_argument("solve: k must be >= 1");
    return solve_fixed_on(f.pow(k), window);
}

RootSet solve_iter_fixed(const PwlMap& f, int k, const Interval& window) {
    MapPowers pw(f);
    return solve_iter_fixed(pw, k, window);
}

bool strictly_below(const PwlMap& lhs, const PwlMap& rhs, const Interval& window,
                    bool closed_lo, bool closed_hi, std::string* witness) {
    if (window.is_point() && !closed_lo && !closed_hi) return true;
    PwlMap d = pwl_sub(lhs, rhs);
    auto fail = [&](const Rational& at) {
        if (witness) *witness = at.str();
        return false;
    };
    // Non-positivity everywhere: linear pieces attain extremes at nodes.
    if (d.eval(window.lo) > Rational(0)) return fail(window.lo);
    if (d.eval(window.hi) > Rational(0)) return fail(window.hi);
    for (const auto& n : d.nodes()) {
        if (n.x > window.lo && n.x < window.hi && n.y > Rational(0)) return fail(n.x);
    }
    // Zeros may only sit at endpoints left open by the caller.
    RootSet zeros = solve_eq_const_on(d, Rational(0), window);
    for (const auto& c : zeros.components()) {
        if (!c.is_point()) return fail(c.lo == window.lo ? c.hi : c.lo);
        if (c.lo == window.lo && !closed_lo) continue;
        if (c.lo == window.hi && !closed_hi) continue;
        return fail(c.lo);
    }
    return true;
}

}  // namespace pwldyn
