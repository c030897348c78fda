#include "pwldyn/sharkovsky.hpp"

#include <algorithm>

namespace pwldyn {

SharkovskyKey SharkovskyKey::of(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("sharkovsky: n must be positive");
    SharkovskyKey k;
    while (n % 2 == 0) {
        n /= 2;
        ++k.two_exponent;
    }
    k.odd_part = n;
    return k;
}

SharkOrder sharkovsky_compare(std::uint64_t m, std::uint64_t n) {
    if (m == n) return SharkOrder::equals;
    SharkovskyKey a = SharkovskyKey::of(m);
    SharkovskyKey b = SharkovskyKey::of(n);
    bool a_pow2 = a.odd_part == 1;
    bool b_pow2 = b.odd_part == 1;
    bool a_first;
    if (!a_pow2 && !b_pow2) {
        // 2^i·odd block: by power ascending, then odd part ascending.
        a_first = a.two_exponent != b.two_exponent ? a.two_exponent < b.two_exponent
                                                   : a.odd_part < b.odd_part;
    } else if (a_pow2 != b_pow2) {
        a_first = !a_pow2;  // everything with an odd factor precedes the powers of two
    } else {
        a_first = a.two_exponent > b.two_exponent;  // tail … ≺ 4 ≺ 2 ≺ 1
    }
    return a_first ? SharkOrder::precedes : SharkOrder::follows;
}

std::vector<std::uint64_t> sharkovsky_successors(std::uint64_t m, std::uint64_t N) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= N; ++n) {
        if (sharkovsky_compare(m, n) == SharkOrder::precedes) out.push_back(n);
    }
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        return sharkovsky_compare(a, b) == SharkOrder::precedes;
    });
    return out;
}

ClosureReport verify_closure(const PwlMap& f, int N) {
    ClosureReport rep;
    MapPowers pw(f);
    rep.periods = period_set(pw, N);
    for (int m : rep.periods) {
        for (int n = 1; n <= N; ++n) {
            if (sharkovsky_compare(std::uint64_t(m), std::uint64_t(n)) == SharkOrder::precedes &&
                rep.periods.count(n) == 0) {
                rep.violations.push_back({m, n});
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

PwlMap minimal_witness_map(int k) {
    if (k < 1) throw std::invalid_argument("minimal_witness_map: k must be >= 1");
    if (k == 1) {
        // T̂_{a,b} needs a < b; a zero-diameter clamp is a constant map.  The
        // interior fixed point 2/3 gives a valid self-map with period set {1}.
        return constant_map(Interval(Rational(0), Rational(1)), Rational(2, 3));
    }
    Orbit p = smallest_diameter_orbit(tent_map(), k);
    return doubly_truncate(p.min(), p.max());
}

Power2Approx power2_map_approx(int levels) {
    if (levels < 1) throw std::invalid_argument("power2_map_approx: levels must be >= 1");
    MapPowers tent(tent_map());
    std::vector<Orbit> chain;
    chain.push_back(smallest_diameter_orbit(tent, 3));
    for (int level = 1; level <= levels; ++level) {
        int period = 3 << level;
        Interval hull(chain.back().min(), chain.back().max());
        std::vector<Orbit> cands;
        for (auto& o : orbits_of_period(tent, period)) {
            if (hull.contains(o.min()) && hull.contains(o.max())) cands.push_back(std::move(o));
        }
        if (cands.empty())
            throw std::logic_error("power2_map_approx: no orbit of period " +
                                   std::to_string(period) + " inside the hull");
        const Orbit* pick = &cands.front();
        for (const auto& o : cands) {
            if (o.diameter < pick->diameter ||
                (o.diameter == pick->diameter && o.min() < pick->min()))
                pick = &o;
        }
        chain.push_back(*pick);
    }
    Power2Approx out{tent_map(), chain.front().min(), chain.front().max(), {}};
    for (const auto& o : chain) {
        out.q0 = std::max(out.q0, o.min());
        out.q1 = std::min(out.q1, o.max());
    }
    out.map = doubly_truncate(out.q0, out.q1);
    out.chain = std::move(chain);
    return out;
}

}  // namespace pwldyn
