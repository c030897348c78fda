#include "pwldyn/pwl.hpp"

#include "pwldyn/solve.hpp"

#include <algorithm>
#include <atomic>

namespace pwldyn {

namespace {
std::atomic<std::size_t> g_piece_cap{std::size_t(1) << 20};
}

std::size_t piece_cap() { return g_piece_cap.load(); }
void set_piece_cap(std::size_t cap) {
    if (cap < 2) throw std::invalid_argument("piece cap must be >= 2");
    g_piece_cap.store(cap);
}

PwlMap::PwlMap(Interval domain, std::vector<PwlNode> nodes)
    : domain_(std::move(domain)), nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("pwl: need at least two nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i].x < nodes_[i + 1].x))
            throw std::invalid_argument("pwl: node x-coordinates must be strictly increasing");
    }
    if (nodes_.front().x != domain_.lo || nodes_.back().x != domain_.hi)
        throw std::invalid_argument("pwl: endpoint nodes must match the domain");
    endomorphism_ = true;
    for (const auto& n : nodes_) {
        if (!domain_.contains(n.y)) {
            endomorphism_ = false;
            break;
        }
    }
}

Rational PwlMap::eval(const Rational& x) const {
    if (!domain_.contains(x)) throw std::domain_error("pwl: eval outside domain");
    // Last node whose x <= query point.
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                               [](const Rational& v, const PwlNode& n) { return v < n.x; });
    std::size_t i = std::size_t(it - nodes_.begin());
    if (i == nodes_.size()) i = nodes_.size() - 1;  // x == domain.hi
    if (i > 0) --i;
    const PwlNode& a = nodes_[i];
    const PwlNode& b = nodes_[i + 1];
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Interval PwlMap::range() const {
    Rational lo = nodes_.front().y, hi = nodes_.front().y;
    for (const auto& n : nodes_) {
        if (n.y < lo) lo = n.y;
        if (n.y > hi) hi = n.y;
    }
    return Interval(lo, hi);
}

Rational PwlMap::slope(std::size_t piece) const {
    const PwlNode& a = nodes_.at(piece);
    const PwlNode& b = nodes_.at(piece + 1);
    return (b.y - a.y) / (b.x - a.x);
}

PwlMap PwlMap::normalized() const {
    std::vector<PwlNode> out;
    out.push_back(nodes_.front());
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
        const PwlNode& prev = out.back();
        const PwlNode& cur = nodes_[i];
        const PwlNode& next = nodes_[i + 1];
        // Keep cur unless collinear with its neighbors.
        Rational lhs = (cur.y - prev.y) * (next.x - cur.x);
        Rational rhs = (next.y - cur.y) * (cur.x - prev.x);
        if (lhs != rhs) out.push_back(cur);
    }
    out.push_back(nodes_.back());
    return PwlMap(domain_, std::move(out));
}

PwlMap compose(const PwlMap& outer, const PwlMap& inner) {
    if (!outer.domain().contains(inner.range()))
        throw std::domain_error("compose: inner range leaves outer domain");

    // Breakpoint candidates: inner nodes plus inner-preimages of outer node
    // x-coordinates (interval preimages contribute their endpoints).
    std::vector<Rational> xs;
    xs.reserve(inner.nodes().size());
    for (const auto& n : inner.nodes()) xs.push_back(n.x);
    for (const auto& on : outer.nodes()) {
        RootSet pre = preimage(inner, Interval::point(on.x));
        for (const auto& c : pre.components()) {
            xs.push_back(c.lo);
            if (!c.is_point()) xs.push_back(c.hi);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() - 1 > piece_cap())
        throw CapExceeded("compose: piece cap exceeded (" + std::to_string(xs.size() - 1) +
                          " pieces, cap " + std::to_string(piece_cap()) + ")");

    std::vector<PwlNode> nodes;
    nodes.reserve(xs.size());
    for (auto& x : xs) nodes.push_back({x, outer.eval(inner.eval(x))});
    return PwlMap(inner.domain(), std::move(nodes));
}

PwlMap iterate_map(const PwlMap& f, int n) {
    if (n < 1) throw std::invalid_argument("iterate: n must be >= 1");
    if (!f.is_endomorphism()) throw std::invalid_argument("iterate: map is not a self-map");
    PwlMap acc = f;
    for (int i = 2; i <= n; ++i) acc = compose(f, acc);
    return acc;
}

PwlMap pwl_sub(const PwlMap& f, const PwlMap& g) {
    if (!(f.domain() == g.domain()))
        throw std::invalid_argument("pwl_sub: domains differ");
    std::vector<Rational> xs;
    for (const auto& n : f.nodes()) xs.push_back(n.x);
    for (const auto& n : g.nodes()) xs.push_back(n.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PwlNode> nodes;
    nodes.reserve(xs.size());
    for (auto& x : xs) nodes.push_back({x, f.eval(x) - g.eval(x)});
    return PwlMap(f.domain(), std::move(nodes));
}

PwlMap constant_map(const Interval& domain, const Rational& c) {
    return PwlMap(domain, {{domain.lo, c}, {domain.hi, c}});
}

PwlMap identity_map(const Interval& domain) {
    return PwlMap(domain, {{domain.lo, domain.lo}, {domain.hi, domain.hi}});
}

bool extensionally_equal(const PwlMap& f, const PwlMap& g) {
    if (!(f.domain() == g.domain())) return false;
    return f.normalized().nodes() == g.normalized().nodes();
}

Unimodal unimodal_class(const PwlMap& f) {
    Interval unit(Rational(0), Rational(1));
    if (!(f.domain() == unit))
        throw std::invalid_argument("unimodal_class: domain must be [0,1]");
    Rational half(1, 2);
    bool strict = true;
    for (std::size_t i = 0; i + 1 < f.nodes().size(); ++i) {
        const Rational& x0 = f.nodes()[i].x;
        const Rational& x1 = f.nodes()[i + 1].x;
        Rational s = f.slope(i);
        bool left = x0 < half;    // piece has material left of 1/2
        bool right = x1 > half;   // piece has material right of 1/2
        if (left && right) {
            // One linear piece straddling the peak abscissa: only slope 0 fits.
            if (s != Rational(0)) return Unimodal::not_unimodal;
            strict = false;
        } else if (left) {
            if (s < Rational(0)) return Unimodal::not_unimodal;
            if (s == Rational(0)) strict = false;
        } else if (right) {
            if (s > Rational(0)) return Unimodal::not_unimodal;
            if (s == Rational(0)) strict = false;
        }
    }
    return strict ? Unimodal::strictly_unimodal : Unimodal::weakly_unimodal;
}

const char* unimodal_name(Unimodal u) {
    switch (u) {
        case Unimodal::strictly_unimodal: return "strictly_unimodal";
        case Unimodal::weakly_unimodal: return "weakly_unimodal";
        default: return "not_unimodal";
    }
}

PwlMap tent_map() {
    return PwlMap(Interval(Rational(0), Rational(1)),
                  {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1)},
                   {Rational(1), Rational(0)}});
}

PwlMap tent_scaled(const Rational& beta) {
    if (!(beta > Rational(0)) || beta > Rational(1))
        throw std::invalid_argument("tent_scaled: need 0 < beta <= 1");
    return PwlMap(Interval(Rational(0), Rational(1)),
                  {{Rational(0), Rational(0)}, {Rational(1, 2), beta},
                   {Rational(1), Rational(0)}});
}

PwlMap example_g() {
    return PwlMap(Interval(Rational(0), Rational(1)),
                  {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(1)},
                   {Rational(1), Rational(0)}});
}

PwlMap truncate_tent(const Rational& h) {
    if (!(h > Rational(0)) || h > Rational(1))
        throw std::invalid_argument("truncate_tent: need 0 < h <= 1");
    if (h == Rational(1)) return tent_map();
    Rational half(1, 2);
    return PwlMap(Interval(Rational(0), Rational(1)),
                  {{Rational(0), Rational(0)},
                   {h * half, h},
                   {Rational(1) - h * half, h},
                   {Rational(1), Rational(0)}});
}

PwlMap doubly_truncate(const Rational& a, const Rational& b) {
    if (!(Rational(0) < a) || !(a < b) || !(b < Rational(1)))
        throw std::invalid_argument("doubly_truncate: need 0 < a < b < 1");
    Rational half(1, 2);
    return PwlMap(Interval(Rational(0), Rational(1)),
                  {{Rational(0), a},
                   {a * half, a},
                   {b * half, b},
                   {Rational(1) - b * half, b},
                   {Rational(1) - a * half, a},
                   {Rational(1), a}});
}

}  // namespace pwldyn
