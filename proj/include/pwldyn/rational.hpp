#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwldyn {

/// Exact rational number, always in canonical form: gcd(|num|, den) = 1,
/// den > 0.  The only scalar type used by the engine; no floating point
/// enters any computation (decimal output exists purely for plot CSV).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Accepts "p", "p/q" (q != 0, any sign); result is canonical.
    static Rational parse(const std::string& s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// "p/q" with q > 0 in lowest terms; "0/1" for zero; whole numbers as "p".
    std::string str() const;
    /// Decimal approximation for plotting only.
    double approx() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

/// Closed interval [lo, hi]; degenerate point intervals allowed.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational l, Rational h);
    static Interval point(const Rational& x) { return Interval(x, x); }

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    std::optional<Interval> intersect(const Interval& o) const;
    Rational length() const { return hi - lo; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

enum class Side { minimum, maximum };

/// Exact solution set of an equation over a window: finitely many pairwise
/// disjoint closed intervals, sorted, with touching components merged.
/// Isolated roots are degenerate intervals; plateau preimages are proper ones.
class RootSet {
public:
    RootSet() = default;

    static RootSet canonical(std::vector<Interval> parts);

    const std::vector<Interval>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    std::size_t size() const { return comps_.size(); }

    bool contains(const Rational& x) const;
    RootSet intersect(const Interval& window) const;
    RootSet united(const RootSet& other) const;

    /// Least (resp. greatest) point of the set clipped to `window`.
    std::optional<Rational> extremal(Side side, const Interval& window) const;
    std::optional<Rational> min_point() const;
    std::optional<Rational> max_point() const;

    bool all_points() const;
    /// Degenerate components as a sorted point list; requires all_points().
    std::vector<Rational> points() const;

    friend bool operator==(const RootSet& a, const RootSet& b) {
        return a.comps_ == b.comps_;
    }

private:
    std::vector<Interval> comps_;
};

}  // namespace pwldyn
