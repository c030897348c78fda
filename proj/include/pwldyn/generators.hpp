#pragma once

#include "pwldyn/pwl.hpp"

#include <random>
#include <vector>

namespace pwldyn {

/// Random rational p/q with 1 <= q <= max_den, clipped into [lo, hi].
inline Rational random_rational(std::mt19937& rng, const Rational& lo, const Rational& hi,
                                long max_den = 64) {
    std::uniform_int_distribution<long> dden(1, max_den);
    long den = dden(rng);
    std::uniform_int_distribution<long> dnum(0, den);
    Rational t(dnum(rng), den);  // in [0, 1]
    return lo + t * (hi - lo);
}

/// Random continuous self-map of [0, 1] with 2..max_pieces linear pieces and
/// node coordinates of bounded denominator.
inline PwlMap random_endomorphism(std::mt19937& rng, int max_pieces = 6, long max_den = 48) {
    std::uniform_int_distribution<int> dpieces(2, max_pieces);
    int pieces = dpieces(rng);
    Interval unit(Rational(0), Rational(1));
    std::vector<Rational> xs{Rational(0), Rational(1)};
    while (int(xs.size()) < pieces + 1) {
        Rational x = random_rational(rng, Rational(0), Rational(1), max_den);
        bool dup = false;
        for (const auto& e : xs) dup |= e == x;
        if (!dup) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<PwlNode> nodes;
    for (const auto& x : xs) nodes.push_back({x, random_rational(rng, Rational(0), Rational(1), max_den)});
    return PwlMap(unit, std::move(nodes));
}

}  // namespace pwldyn
