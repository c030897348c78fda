#pragma once

#include "pwldyn/pwl.hpp"
#include "pwldyn/rational.hpp"

#include <deque>
#include <memory>
#include <string>
#include <vector>

namespace pwldyn {

/// Exact {x in domain : f(x) ∈ target} as a RootSet.
RootSet preimage(const PwlMap& f, const Interval& target);

/// Memoized powers f, f², f³, … of an endomorphism, shared by every solver
/// and tower builder working on the same map.
class MapPowers {
public:
    explicit MapPowers(PwlMap f);

    const PwlMap& base() const { return pows_.front(); }
    /// f^k, materialized on demand; throws CapExceeded past the piece budget.
    const PwlMap& pow(int k);
    /// f^k(x) by k point evaluations; never materializes a map.
    Rational eval_pow(int k, Rational x) const;

private:
    // Deque keeps references from pow() stable while later powers append.
    std::deque<PwlMap> pows_;
};

enum class SolveStrategy { automatic, explicit_iterate, pullback };

/// Roots of F(x) = c over a window, for an already-materialized map F.
RootSet solve_eq_const_on(const PwlMap& F, const Rational& c, const Interval& window);
/// Roots of F(x) = x over a window; slope-1 zero-offset pieces contribute
/// whole-interval components.
RootSet solve_fixed_on(const PwlMap& F, const Interval& window);

/// Exact {x ∈ window : f^k(x) = c}.  `automatic` uses the explicit iterate
/// while it fits the piece budget and falls back to k-fold preimage pullback
/// otherwise; the two strategies are independent code paths and must agree.
RootSet solve_iter_eq_const(MapPowers& f, int k, const Rational& c, const Interval& window,
                            SolveStrategy strategy = SolveStrategy::automatic);
RootSet solve_iter_eq_const(const PwlMap& f, int k, const Rational& c, const Interval& window,
                            SolveStrategy strategy = SolveStrategy::automatic);

/// Exact {x ∈ window : f^k(x) = x}; needs the explicit iterate.
RootSet solve_iter_fixed(MapPowers& f, int k, const Interval& window);
RootSet solve_iter_fixed(const PwlMap& f, int k, const Interval& window);

/// Exact check that lhs(x) < rhs(x) holds on the window, endpoints included
/// per the flags.  Piecewise-linear differences make this decidable: the
/// difference must be ≤ 0 everywhere and vanish only at permitted endpoints.
/// On failure returns false and, if given, fills `witness` with a point.
bool strictly_below(const PwlMap& lhs, const PwlMap& rhs, const Interval& window,
                    bool closed_lo, bool closed_hi, std::string* witness = nullptr);

}  // namespace pwldyn
