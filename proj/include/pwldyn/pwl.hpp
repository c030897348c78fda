#pragma once

#include "pwldyn/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pwldyn {

/// Thrown when an iterate would exceed the configured piece budget.  Callers
/// that only need solution sets can fall back to preimage pullback.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Process-wide piece budget for explicit iterates (default 2^20 pieces).
std::size_t piece_cap();
void set_piece_cap(std::size_t cap);

struct PwlNode {
    Rational x;
    Rational y;
    friend bool operator==(const PwlNode& a, const PwlNode& b) {
        return a.x == b.x && a.y == b.y;
    }
};

/// Continuous piecewise-linear map on a compact interval, stored as its
/// breakpoint list (strictly increasing x, linear interpolation between).
/// Construction validates the shape and records whether the map is a
/// self-map of its domain; leaving the domain is not an error because
/// intermediate compositions may do so legitimately.
class PwlMap {
public:
    PwlMap(Interval domain, std::vector<PwlNode> nodes);

    const Interval& domain() const { return domain_; }
    const std::vector<PwlNode>& nodes() const { return nodes_; }
    bool is_endomorphism() const { return endomorphism_; }
    std::size_t piece_count() const { return nodes_.size() - 1; }

    Rational eval(const Rational& x) const;
    Interval range() const;
    /// Slope of piece i (between nodes i and i+1).
    Rational slope(std::size_t piece) const;

    /// Same map with interior collinear nodes removed.  Kept as a separate
    /// pass so plateau boundaries stay explicit in freshly built maps.
    PwlMap normalized() const;

private:
    Interval domain_;
    std::vector<PwlNode> nodes_;
    bool endomorphism_;
};

/// outer ∘ inner, exact; requires range(inner) ⊆ domain(outer).
PwlMap compose(const PwlMap& outer, const PwlMap& inner);

/// f^n by repeated composition; requires f to be an endomorphism and every
/// intermediate to stay within the piece cap.
PwlMap iterate_map(const PwlMap& f, int n);

/// Pointwise f - g on a common domain (node x-sets merged).
PwlMap pwl_sub(const PwlMap& f, const PwlMap& g);

PwlMap constant_map(const Interval& domain, const Rational& c);
PwlMap identity_map(const Interval& domain);

/// Extensional equality: same domain, same values everywhere.
bool extensionally_equal(const PwlMap& f, const PwlMap& g);

enum class Unimodal { strictly_unimodal, weakly_unimodal, not_unimodal };

/// Slope-sign classification against the peak abscissa 1/2; domain must be
/// [0, 1].
Unimodal unimodal_class(const PwlMap& f);
const char* unimodal_name(Unimodal u);

// Map catalog.
PwlMap tent_map();
PwlMap tent_scaled(const Rational& beta);   // 0 < beta <= 1
PwlMap example_g();
PwlMap truncate_tent(const Rational& h);                       // 0 < h <= 1
PwlMap doubly_truncate(const Rational& a, const Rational& b);  // 0 < a < b < 1

}  // namespace pwldyn
