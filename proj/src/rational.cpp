#include "pwldyn/rational.hpp"

#include <algorithm>

namespace pwldyn {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(mpq_class(mpz_class(s)));
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(std::move(q));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

std::string Rational::str() const {
    if (is_zero()) return "0/1";
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("interval: lo > hi");
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
    Rational l = std::max(lo, o.lo);
    Rational h = std::min(hi, o.hi);
    if (l > h) return std::nullopt;
    return Interval(l, h);
}

RootSet RootSet::canonical(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    RootSet rs;
    for (auto& p : parts) {
        if (!rs.comps_.empty() && p.lo <= rs.comps_.back().hi) {
            if (p.hi > rs.comps_.back().hi) rs.comps_.back().hi = p.hi;
        } else {
            rs.comps_.push_back(p);
        }
    }
    return rs;
}

bool RootSet::contains(const Rational& x) const {
    auto it = std::upper_bound(comps_.begin(), comps_.end(), x,
                               [](const Rational& v, const Interval& c) { return v < c.lo; });
    if (it == comps_.begin()) return false;
    --it;
    return it->contains(x);
}

RootSet RootSet::intersect(const Interval& window) const {
    std::vector<Interval> out;
    for (const auto& c : comps_) {
        if (auto w = c.intersect(window)) out.push_back(*w);
    }
    return canonical(std::move(out));
}

RootSet RootSet::united(const RootSet& other) const {
    std::vector<Interval> all = comps_;
    all.insert(all.end(), other.comps_.begin(), other.comps_.end());
    return canonical(std::move(all));
}

std::optional<Rational> RootSet::extremal(Side side, const Interval& window) const {
    std::optional<Rational> best;
    for (const auto& c : comps_) {
        auto w = c.intersect(window);
        if (!w) continue;
        if (side == Side::minimum) {
            if (!best || w->lo < *best) best = w->lo;
        } else {
            if (!best || w->hi > *best) best = w->hi;
        }
    }
    return best;
}

std::optional<Rational> RootSet::min_point() const {
    if (comps_.empty()) return std::nullopt;
    return comps_.front().lo;
}

std::optional<Rational> RootSet::max_point() const {
    if (comps_.empty()) return std::nullopt;
    return comps_.back().hi;
}

bool RootSet::all_points() const {
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const Interval& c) { return c.is_point(); });
}

std::vector<Rational> RootSet::points() const {
    std::vector<Rational> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) {
        if (!c.is_point())
            throw std::logic_error("rootset: points() on a set with interval components");
        out.push_back(c.lo);
    }
    return out;
}

}  // namespace pwldyn
