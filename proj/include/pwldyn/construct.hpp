#pragma once

#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/solve.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pwldyn {

/// The five sections of the basic tower, named after the diacritic the
/// notation uses for points living there.
enum class Family { tilde, plain, breve, hat, bar };
const char* family_name(Family f);

/// A constructed point with its claimed least period and the outcome of the
/// exact re-verification.  `claim_guaranteed` distinguishes hard claims from
/// indices where only a fallback period is stated.
struct LabeledPoint {
    std::string label;
    Family family = Family::plain;
    Rational value;
    std::optional<int> claimed_least_period;
    bool claim_guaranteed = false;
    std::optional<int> fallback_least_period;
    std::optional<int> actual_least_period;
    bool verified = true;
    int chosen_root_index = 0;  // auxiliary points: which root passed the sandwich
};

/// Landmarks of the main-text construction for an odd-period orbit P:
/// e = f^{m-1}(min P), v the smallest f-preimage of e in [min P, e), z the
/// smallest fixed point in (v, e), z0/d/y the f²-landmarks, and the two
/// distinguished d-points breve_u0 (max in [d,v]) and hat_u0 (min in [v,z0]).
struct ConstructionContext {
    PwlMap map;
    Orbit P;
    int m = 0;
    Rational min_p, max_p, e, v, z, y, z0, d;
    Rational u1, breve_u0, hat_u0;
    std::shared_ptr<MapPowers> powers;

    const PwlMap& pow(int k) const { return powers->pow(k); }
};

ConstructionContext base_context(const PwlMap& f, const Orbit& P);
ConstructionContext base_context(const PwlMap& f, const std::vector<Rational>& orbit_points);

/// u_n = min { d <= x <= v : f^{2n}(x) = d }, n = 1..N, with the decreasing
/// chain and the trapping guards d < f^{2i}(x) < z0 verified exactly.
std::vector<LabeledPoint> u_points(const ConstructionContext& ctx, int N);

/// ubar'_n = max { v <= x <= z0 : f^{2n}(x) = d }, n = 1..N, with the
/// increasing chain and the monotone-image guards verified exactly.
std::vector<LabeledPoint> bar_u_points(const ConstructionContext& ctx, int N);

/// First layer of the basic tower: per section one periodic-point sequence
/// and one d-point sequence, all with verified least periods, plus the
/// main-text p-family; the full ordering chain is checked exactly.
struct Layer1 {
    // d-point sequences (indices n as in the construction)
    std::vector<LabeledPoint> tilde_mu;  // n = 0..N
    std::vector<LabeledPoint> u;         // n = 1..N
    std::vector<LabeledPoint> breve_mu;  // n = 1..N
    std::vector<LabeledPoint> hat_mu;    // n = 1..N
    std::vector<LabeledPoint> bar_u;     // n = 1..N
    // periodic-point sequences
    std::vector<LabeledPoint> tilde_q;  // period m+2n, n = 0..N
    std::vector<LabeledPoint> c;        // period 2n,   n = 1..N
    std::vector<LabeledPoint> breve_p;  // period m+2n, n = 1..N
    std::vector<LabeledPoint> hat_q;    // period m+2n, n = 1..N
    std::vector<LabeledPoint> bar_c;    // period 2n+2, n = 1..N
    std::vector<LabeledPoint> p_main;   // period m+2n, n = 1..N
    std::vector<std::string> violations;
    bool pass = false;

    std::vector<const LabeledPoint*> all_points() const;
};

Layer1 build_layer1(const ConstructionContext& ctx, int N);

/// Outermost even-period points: c~'*_{2m+2i} = max { min P <= x <= d :
/// f^{2m+2i}(x) = x } for i = 0..count.  Verified for i >= 1; the i = 0
/// point may collapse to least period m and is only reported.
std::vector<LabeledPoint> remark3_points(const ConstructionContext& ctx, int count);

// Shared internals, also used by the tower generators.
namespace detail {

std::string idx(std::initializer_list<int> is);
LabeledPoint make_point(std::string label, Family fam, Rational value,
                        std::optional<int> claimed, bool guaranteed,
                        std::optional<int> fallback = std::nullopt);

/// Extremal root of f^k(x) = c (or = x when fixed_point) over a window;
/// throws std::logic_error when the window holds no root (the constructions
/// guarantee nonemptiness, so emptiness flags an engine bug).
Rational extremal_root(const ConstructionContext& ctx, int k, bool fixed_point,
                       const Rational& c, const Interval& window, Side side,
                       const std::string& what);

/// Recomputes actual_least_period and the verified flag per claim strength.
void verify_claim(const ConstructionContext& ctx, LabeledPoint& p);

/// Collects ordering violations; relations are checked with exact compares.
class ChainChecker {
public:
    void require_lt(const LabeledPoint& a, const LabeledPoint& b);
    void require_le(const LabeledPoint& a, const LabeledPoint& b);
    void require_lt(const std::string& la, const Rational& a, const std::string& lb,
                    const Rational& b);
    void require_le(const std::string& la, const Rational& a, const std::string& lb,
                    const Rational& b);
    const std::vector<std::string>& violations() const { return violations_; }
    void append_to(std::vector<std::string>& out) const;

private:
    std::vector<std::string> violations_;
};

}  // namespace detail

}  // namespace pwldyn
