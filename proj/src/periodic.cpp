#include "pwldyn/periodic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace pwldyn {

std::optional<int> least_period(const PwlMap& f, const Rational& x, int n) {
    if (n < 1) throw std::invalid_argument("least_period: n must be >= 1");
    std::vector<Rational> traj;
    traj.reserve(std::size_t(n) + 1);
    traj.push_back(x);
    for (int i = 0; i < n; ++i) traj.push_back(f.eval(traj.back()));
    if (traj[std::size_t(n)] != x) return std::nullopt;
    for (int t = 1; t <= n; ++t) {
        if (traj[std::size_t(t)] == x) {
            if (n % t != 0)
                throw std::logic_error("least_period: found period does not divide n");
            return t;
        }
    }
    return std::nullopt;  // unreachable
}

Orbit orbit_from_points(const PwlMap& f, std::vector<Rational> points) {
    if (points.empty()) throw std::invalid_argument("orbit: empty point list");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    int n = int(points.size());
    // Walk the cycle from the smallest point; it must visit every point once.
    Rational x = points.front();
    std::vector<Rational> seen;
    for (int i = 0; i < n; ++i) {
        seen.push_back(x);
        x = f.eval(x);
    }
    if (x != points.front())
        throw std::invalid_argument("orbit: points do not close a cycle under f");
    std::sort(seen.begin(), seen.end());
    if (seen != points)
        throw std::invalid_argument("orbit: points are not a single cycle under f");
    Orbit o;
    o.points = std::move(points);
    o.least_period = n;
    o.diameter = o.points.back() - o.points.front();
    return o;
}

std::vector<Orbit> orbits_of_period(MapPowers& f, int n) {
    RootSet fixed = solve_iter_fixed(f, n, f.base().domain());
    for (const auto& c : fixed.components()) {
        if (!c.is_point())
            throw InfinitePeriodicSet("period-" + std::to_string(n) +
                                      " point set has an interval component [" +
                                      c.lo.str() + ", " + c.hi.str() + "]");
    }
    std::vector<Rational> pts = fixed.points();
    std::vector<bool> used(pts.size(), false);
    std::vector<Orbit> orbits;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        auto lp = least_period(f.base(), pts[i], n);
        if (!lp || *lp != n) {
            used[i] = true;  // belongs to a shorter period; skip the whole walk
            continue;
        }
        std::vector<Rational> cycle;
        Rational x = pts[i];
        for (int step = 0; step < n; ++step) {
            cycle.push_back(x);
            auto it = std::lower_bound(pts.begin(), pts.end(), x);
            if (it == pts.end() || *it != x)
                throw std::logic_error("orbit grouping: image escaped the solved fixed-point set");
            used[std::size_t(it - pts.begin())] = true;
            x = f.base().eval(x);
        }
        if (x != pts[i])
            throw std::logic_error("orbit grouping: cycle failed to close");
        std::sort(cycle.begin(), cycle.end());
        Orbit o;
        o.points = std::move(cycle);
        o.least_period = n;
        o.diameter = o.points.back() - o.points.front();
        orbits.push_back(std::move(o));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const Orbit& a, const Orbit& b) { return a.min() < b.min(); });
    return orbits;
}

std::vector<Orbit> orbits_of_period(const PwlMap& f, int n) {
    MapPowers pw(f);
    return orbits_of_period(pw, n);
}

std::set<int> period_set(MapPowers& f, int N) {
    std::set<int> out;
    for (int n = 1; n <= N; ++n) {
        if (!orbits_of_period(f, n).empty()) out.insert(n);
    }
    return out;
}

std::set<int> period_set(const PwlMap& f, int N) {
    MapPowers pw(f);
    return period_set(pw, N);
}

Orbit smallest_diameter_orbit(MapPowers& f, int n) {
    auto orbits = orbits_of_period(f, n);
    if (orbits.empty())
        throw std::invalid_argument("smallest_diameter_orbit: no period-" + std::to_string(n) +
                                    " orbit");
    const Orbit* best = &orbits.front();
    for (const auto& o : orbits) {
        if (o.diameter < best->diameter ||
            (o.diameter == best->diameter && o.min() < best->min()))
            best = &o;
    }
    return *best;
}

Orbit smallest_diameter_orbit(const PwlMap& f, int n) {
    MapPowers pw(f);
    return smallest_diameter_orbit(pw, n);
}

Rational h_value(MapPowers& f, int m) {
    auto orbits = orbits_of_period(f, m);
    if (orbits.empty())
        throw std::invalid_argument("h_value: no period-" + std::to_string(m) + " orbit");
    Rational best = orbits.front().max();
    for (const auto& o : orbits) best = std::min(best, o.max());
    return best;
}

long iterate_period(long m, long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("iterate_period: need m, n >= 1");
    return m / std::gcd(m, n);
}

std::set<long> lift_periods(long k, long n) {
    if (k < 1 || n < 1) throw std::invalid_argument("lift_periods: need k, n >= 1");
    std::set<long> out;
    for (long s = 1; s <= n; ++s) {
        if (n % s == 0 && std::gcd(s, k) == 1) out.insert(k * n / s);
    }
    return out;
}

NestedReport verify_nested(const PwlMap& f, int N) {
    NestedReport rep;
    rep.clazz = unimodal_class(f);
    if (rep.clazz == Unimodal::not_unimodal)
        throw std::invalid_argument("verify_nested: map is not unimodal");
    MapPowers pw(f);
    std::vector<Orbit> orbits;
    for (int n = 2; n <= N; ++n) {
        for (auto& o : orbits_of_period(pw, n)) orbits.push_back(std::move(o));
    }
    rep.orbit_count = int(orbits.size());
    Rational half(1, 2);
    for (const auto& o : orbits) {
        if (!(o.min() <= half && half <= o.max()))
            rep.violations.push_back("orbit min=" + o.min().str() +
                                     " does not straddle 1/2");
        if (f.eval(o.max()) != o.min())
            rep.violations.push_back("f(max)=" + f.eval(o.max()).str() + " != min=" +
                                     o.min().str() + " for orbit of period " +
                                     std::to_string(o.least_period));
    }
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        for (std::size_t j = 0; j < orbits.size(); ++j) {
            if (i == j) continue;
            const Orbit& P = orbits[i];
            const Orbit& Q = orbits[j];
            if (!(P.max() < Q.max())) continue;
            ++rep.pairs_checked;
            if (!(Q.min() < P.min())) {
                std::ostringstream os;
                os << "hull [" << P.min().str() << "," << P.max().str() << "] (period "
                   << P.least_period << ") not inside [" << Q.min().str() << ","
                   << Q.max().str() << "] (period " << Q.least_period << ")";
                rep.violations.push_back(os.str());
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace pwldyn
