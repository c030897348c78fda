#pragma once

#include "pwldyn/pwl.hpp"
#include "pwldyn/solve.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pwldyn {

/// A single periodic orbit: its sorted point set, least period and diameter.
struct Orbit {
    std::vector<Rational> points;  // sorted ascending; size == least_period
    int least_period = 0;
    Rational diameter;

    const Rational& min() const { return points.front(); }
    const Rational& max() const { return points.back(); }
};

/// Thrown when a period-n point set has interval components (a slope-1 piece
/// of f^n fixes a whole segment); enumeration refuses to truncate it.
struct InfinitePeriodicSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least t with f^t(x) = x, provided f^n(x) = x holds; nullopt otherwise.
/// The result divides n (Lemma-1 style arithmetic, asserted).
std::optional<int> least_period(const PwlMap& f, const Rational& x, int n);

/// Validates that `points` is one cycle of f and returns it as an Orbit.
Orbit orbit_from_points(const PwlMap& f, std::vector<Rational> points);

/// All orbits of least period exactly n, ordered by smallest point.
std::vector<Orbit> orbits_of_period(MapPowers& f, int n);
std::vector<Orbit> orbits_of_period(const PwlMap& f, int n);

/// {n <= N : f has a period-n orbit}, each n enumerated independently.
std::set<int> period_set(MapPowers& f, int N);
std::set<int> period_set(const PwlMap& f, int N);

/// Orbit minimizing diameter; ties broken by smallest minimum point.
Orbit smallest_diameter_orbit(MapPowers& f, int n);
Orbit smallest_diameter_orbit(const PwlMap& f, int n);

/// min over period-m orbits of max Q.
Rational h_value(MapPowers& f, int m);

/// Least period of x under f^n when x has least period m under f: m/gcd(m,n).
long iterate_period(long m, long n);

/// Least periods under f compatible with least period k under f^n:
/// {k n / s : s | n, gcd(s, k) = 1}.
std::set<long> lift_periods(long k, long n);

struct NestedReport {
    Unimodal clazz = Unimodal::not_unimodal;
    int orbit_count = 0;
    int pairs_checked = 0;
    std::vector<std::string> violations;
    bool pass = false;
};

/// Checks, for every pair of enumerated orbits of least period in [2, N],
/// that max P < max Q implies [min P, max P] ⊂ [min Q, max Q]; also checks
/// f(max P) = min P and min P <= 1/2 <= max P per orbit.
NestedReport verify_nested(const PwlMap& f, int N);

}  // namespace pwldyn
