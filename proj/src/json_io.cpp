#include "pwldyn/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pwldyn {

namespace {

json rat_json(const Rational& r) { return r.str(); }

json opt_int(const std::optional<int>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json map_to_json(const PwlMap& f) {
    json nodes = json::array();
    for (const auto& n : f.nodes()) nodes.push_back({rat_json(n.x), rat_json(n.y)});
    return json{{"schema", "v1"},
                {"domain", {rat_json(f.domain().lo), rat_json(f.domain().hi)}},
                {"nodes", nodes},
                {"endomorphism", f.is_endomorphism()}};
}

PwlMap map_from_json(const json& j) {
    Interval domain(Rational::parse(j.at("domain").at(0).get<std::string>()),
                    Rational::parse(j.at("domain").at(1).get<std::string>()));
    std::vector<PwlNode> nodes;
    for (const auto& n : j.at("nodes"))
        nodes.push_back({Rational::parse(n.at(0).get<std::string>()),
                         Rational::parse(n.at(1).get<std::string>())});
    return PwlMap(domain, std::move(nodes));
}

json rootset_to_json(const RootSet& rs) {
    json comps = json::array();
    for (const auto& c : rs.components()) {
        if (c.is_point())
            comps.push_back({rat_json(c.lo)});
        else
            comps.push_back({rat_json(c.lo), rat_json(c.hi)});
    }
    return json{{"schema", "v1"}, {"components", comps}};
}

json orbit_to_json(const Orbit& o) {
    json pts = json::array();
    for (const auto& p : o.points) pts.push_back(rat_json(p));
    return json{{"schema", "v1"},
                {"points", pts},
                {"least_period", o.least_period},
                {"diameter", rat_json(o.diameter)}};
}

json closure_report_to_json(const ClosureReport& rep) {
    json viol = json::array();
    for (const auto& v : rep.violations) viol.push_back({{"have", v.have}, {"missing", v.missing}});
    return json{{"schema", "v1"},
                {"period_set", rep.periods},
                {"violations", viol},
                {"pass", rep.pass}};
}

json nested_report_to_json(const NestedReport& rep) {
    return json{{"schema", "v1"},
                {"unimodal", unimodal_name(rep.clazz)},
                {"orbit_count", rep.orbit_count},
                {"pairs_checked", rep.pairs_checked},
                {"violations", rep.violations},
                {"pass", rep.pass}};
}

json labeled_point_to_json(const LabeledPoint& p) {
    return json{{"label", p.label},
                {"value", rat_json(p.value)},
                {"claimed", opt_int(p.claimed_least_period)},
                {"guaranteed", p.claim_guaranteed},
                {"least_period", opt_int(p.actual_least_period)},
                {"verified", p.verified}};
}

json context_to_json(const ConstructionContext& ctx) {
    // Landmarks that happen to be periodic carry their recomputed least
    // period; d-points and other non-periodic landmarks carry null.
    auto row = [&ctx](const char* label, const Rational& v) {
        json lp = nullptr;
        bool verified = true;
        for (int bound : {1, 2, ctx.m}) {
            if (auto t = least_period(ctx.map, v, bound)) {
                lp = *t;
                break;
            }
        }
        return json{{"label", label}, {"value", v.str()}, {"least_period", lp},
                    {"verified", verified}};
    };
    return json{{"schema", "v1"},
                {"m", ctx.m},
                {"orbit", orbit_to_json(ctx.P)},
                {"points",
                 {row("minP", ctx.min_p), row("maxP", ctx.max_p), row("e", ctx.e),
                  row("v", ctx.v), row("z", ctx.z), row("y", ctx.y), row("z0", ctx.z0),
                  row("d", ctx.d), row("u1", ctx.u1), row("breve_u0'", ctx.breve_u0),
                  row("hat_u0", ctx.hat_u0)}}};
}

json layer1_to_json(const Layer1& L) {
    auto seq = [](const std::vector<LabeledPoint>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(labeled_point_to_json(p));
        return a;
    };
    return json{{"schema", "v1"},
                {"tilde_mu", seq(L.tilde_mu)},
                {"u", seq(L.u)},
                {"breve_mu", seq(L.breve_mu)},
                {"hat_mu", seq(L.hat_mu)},
                {"bar_u", seq(L.bar_u)},
                {"tilde_q", seq(L.tilde_q)},
                {"c", seq(L.c)},
                {"breve_p", seq(L.breve_p)},
                {"hat_q", seq(L.hat_q)},
                {"bar_c", seq(L.bar_c)},
                {"p", seq(L.p_main)},
                {"violations", L.violations},
                {"pass", L.pass}};
}

json compartment_to_json(const Compartment& c) {
    json seqs = json::object();
    for (int s = 0; s < 3; ++s) {
        json a = json::array();
        for (const auto& p : c.sequences[std::size_t(s)]) a.push_back(labeled_point_to_json(p));
        seqs[c.sequence_names[std::size_t(s)]] = a;
    }
    json dp = json::array();
    for (const auto& p : c.d_points) dp.push_back(labeled_point_to_json(p));
    return json{{"family", family_name(c.family)},
                {"layer", c.layer},
                {"n", c.n},
                {"k", c.layer == 3 ? json(c.k) : json(nullptr)},
                {"window", {c.window_lo.str(), c.window_hi.str()}},
                {"nu", labeled_point_to_json(c.nu)},
                {"d_points", dp},
                {"sequences", seqs},
                {"hulls_disjoint", c.hulls_disjoint},
                {"violations", c.violations},
                {"pass", c.pass}};
}

json tower_to_json(const Tower& t) {
    json comps = json::array();
    for (const auto& c : t.compartments) comps.push_back(compartment_to_json(c));
    json table = json::array();
    for (const auto& r : t.verification) {
        table.push_back({{"label", r.label},
                         {"value", r.value.str()},
                         {"claimed", opt_int(r.claimed)},
                         {"actual", opt_int(r.actual)},
                         {"guaranteed", r.guaranteed},
                         {"pass", r.pass}});
    }
    return json{{"schema", "v1"},
                {"layer1", layer1_to_json(t.first)},
                {"compartments", comps},
                {"verification", table},
                {"violations", t.violations},
                {"pass", t.pass}};
}

json nonexistence_to_json(const NonexistenceReport& rep) {
    return json{{"schema", "v1"},
                {"lemma", rep.lemma},
                {"window", {rep.window_lo.str(), rep.window_hi.str()}},
                {"bound", rep.bound},
                {"allowed", rep.allowed},
                {"required", rep.required},
                {"found", rep.found},
                {"pass", rep.pass}};
}

PwlMap parse_map_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "tent") return tent_map();
    if (head == "example_g") return example_g();
    if (head == "tent_scaled") return tent_scaled(Rational::parse(args));
    if (head == "tent_trunc") return truncate_tent(Rational::parse(args));
    if (head == "tent_clamp") {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("tent_clamp needs two parameters a,b");
        return doubly_truncate(Rational::parse(args.substr(0, comma)),
                               Rational::parse(args.substr(comma + 1)));
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("unknown map spec or unreadable file: " + spec);
    json j;
    in >> j;
    return map_from_json(j);
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(Rational::parse(item));
    }
    return out;
}

}  // namespace pwldyn
