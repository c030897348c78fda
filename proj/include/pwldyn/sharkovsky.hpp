#pragma once

#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace pwldyn {

/// n = 2^two_exponent · odd_part with odd_part odd.
struct SharkovskyKey {
    unsigned two_exponent = 0;
    std::uint64_t odd_part = 1;

    static SharkovskyKey of(std::uint64_t n);
    std::uint64_t value() const { return odd_part << two_exponent; }
};

enum class SharkOrder { precedes, equals, follows };

/// The total order 3 ≺ 5 ≺ 7 ≺ … ≺ 2·3 ≺ 2·5 ≺ … ≺ 2² ≺ 2 ≺ 1.
SharkOrder sharkovsky_compare(std::uint64_t m, std::uint64_t n);

/// All n <= N with m ≺ n, listed in Sharkovsky order.
std::vector<std::uint64_t> sharkovsky_successors(std::uint64_t m, std::uint64_t N);

struct ClosureViolation {
    int have = 0;     // period present in the map
    int missing = 0;  // forced successor that failed to appear
};

struct ClosureReport {
    std::set<int> periods;
    std::vector<ClosureViolation> violations;
    bool pass = false;
};

/// Computes period_set(f, N) and checks it is downward closed under the
/// Sharkovsky order: m present and m ≺ n ≤ N forces n present.
ClosureReport verify_closure(const PwlMap& f, int N);

/// The clamped tent over the smallest-diameter period-k orbit P_k: it has
/// exactly one period-k orbit and nothing that precedes k.  For k = 1 the
/// clamp degenerates; we pin the map to the interior fixed point 2/3.
PwlMap minimal_witness_map(int k);

struct Power2Approx {
    PwlMap map;            // tent clamped to [q0, q1]
    Rational q0;
    Rational q1;
    std::vector<Orbit> chain;  // Q_3, Q_6, …, Q_{2^levels · 3}
};

/// Finite-depth nest Q_3 ⊇ Q_6 ⊇ … of smallest-diameter orbits of the tent
/// map, each chosen inside the previous hull; q0/q1 are the extreme bounds
/// seen along the chain.
Power2Approx power2_map_approx(int levels);

}  // namespace pwldyn
