#include "pwldyn/acceptance.hpp"
#include "pwldyn/construct.hpp"
#include "pwldyn/json_io.hpp"
#include "pwldyn/periodic.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/sharkovsky.hpp"
#include "pwldyn/solve.hpp"
#include "pwldyn/towers.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>

using namespace pwldyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapExceeded = 3;

std::string approx12(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", r.approx());
    return buf;
}

void print_point_table(const std::vector<const LabeledPoint*>& pts) {
    for (const auto* p : pts) {
        std::cout << std::left << std::setw(24) << p->label << " " << std::setw(16)
                  << p->value.str();
        if (p->claimed_least_period)
            std::cout << " claimed=" << *p->claimed_least_period
                      << (p->claim_guaranteed ? "" : " (reported)");
        if (p->actual_least_period) std::cout << " actual=" << *p->actual_least_period;
        if (p->claimed_least_period) std::cout << (p->verified ? " ok" : " MISMATCH");
        std::cout << "\n";
    }
}

int cmd_map(const std::string& spec, const std::string& format) {
    PwlMap f = parse_map_spec(spec);
    if (format == "json") {
        json j = map_to_json(f);
        j["unimodal"] = unimodal_name(unimodal_class(f));
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    if (format == "csv") {
        std::cout << "x,y,x_approx,y_approx\n";
        for (const auto& n : f.nodes())
            std::cout << n.x.str() << "," << n.y.str() << "," << approx12(n.x) << ","
                      << approx12(n.y) << "\n";
        return kExitOk;
    }
    std::cout << "domain  [" << f.domain().lo.str() << ", " << f.domain().hi.str() << "]\n";
    std::cout << "pieces  " << f.piece_count() << "\n";
    std::cout << "selfmap " << (f.is_endomorphism() ? "yes" : "no") << "\n";
    std::cout << "shape   " << unimodal_name(unimodal_class(f)) << "\n";
    for (const auto& n : f.nodes())
        std::cout << "node    (" << n.x.str() << ", " << n.y.str() << ")\n";
    return kExitOk;
}

int cmd_solve(const std::string& spec, int k, const std::string& cstr, bool fixed,
              const std::string& window_str, const std::string& strategy,
              const std::string& format) {
    PwlMap f = parse_map_spec(spec);
    Interval window = f.domain();
    if (!window_str.empty()) {
        auto parts = parse_rational_list(window_str);
        if (parts.size() != 2) throw CLI::ValidationError("--window needs lo,hi");
        window = Interval(parts[0], parts[1]);
    }
    RootSet roots;
    if (fixed) {
        roots = solve_iter_fixed(f, k, window);
    } else {
        SolveStrategy st = SolveStrategy::automatic;
        if (strategy == "iterate") st = SolveStrategy::explicit_iterate;
        if (strategy == "pullback") st = SolveStrategy::pullback;
        roots = solve_iter_eq_const(f, k, Rational::parse(cstr), window, st);
    }
    if (format == "json") {
        std::cout << rootset_to_json(roots).dump(2) << "\n";
    } else {
        for (const auto& c : roots.components()) {
            if (c.is_point())
                std::cout << c.lo.str() << "\n";
            else
                std::cout << "[" << c.lo.str() << ", " << c.hi.str() << "]\n";
        }
    }
    return kExitOk;
}

int cmd_orbits(const std::string& spec, int period, int upto, const std::string& format) {
    PwlMap f = parse_map_spec(spec);
    MapPowers pw(f);
    json out = json::array();
    if (format == "csv") std::cout << "least_period,orbit_min,orbit_max,diameter,points\n";
    int lo = period > 0 ? period : 1;
    int hi = period > 0 ? period : upto;
    for (int n = lo; n <= hi; ++n) {
        for (const auto& o : orbits_of_period(pw, n)) {
            if (format == "json") {
                out.push_back(orbit_to_json(o));
            } else if (format == "csv") {
                std::cout << o.least_period << "," << o.min().str() << "," << o.max().str()
                          << "," << o.diameter.str() << ",";
                for (std::size_t i = 0; i < o.points.size(); ++i)
                    std::cout << (i ? ";" : "") << o.points[i].str();
                std::cout << "\n";
            } else {
                std::cout << "period " << o.least_period << " diameter " << o.diameter.str()
                          << " points";
                for (const auto& p : o.points) std::cout << " " << p.str();
                std::cout << "\n";
            }
        }
    }
    if (format == "json")
        std::cout << json{{"schema", "v1"}, {"orbits", out}}.dump(2) << "\n";
    return kExitOk;
}

int cmd_shark_compare(std::uint64_t m, std::uint64_t n) {
    auto r = sharkovsky_compare(m, n);
    const char* rel = r == SharkOrder::equals ? "=" : (r == SharkOrder::precedes ? "≺" : "≻");
    std::cout << m << " " << rel << " " << n << "\n";
    return kExitOk;
}

int cmd_shark_closure(const std::string& spec, int upto, const std::string& format) {
    auto rep = verify_closure(parse_map_spec(spec), upto);
    if (format == "json") {
        std::cout << closure_report_to_json(rep).dump(2) << "\n";
    } else {
        std::cout << "periods {";
        bool first = true;
        for (int n : rep.periods) {
            std::cout << (first ? "" : ", ") << n;
            first = false;
        }
        std::cout << "}\n";
        for (const auto& v : rep.violations)
            std::cout << "violation: have " << v.have << " missing " << v.missing << "\n";
        std::cout << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    return rep.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_construct(const std::string& spec, const std::string& orbit, int layers, int remark3,
                  const std::string& format) {
    PwlMap f = parse_map_spec(spec);
    ConstructionContext ctx = base_context(f, parse_rational_list(orbit));
    Layer1 L = build_layer1(ctx, layers);
    auto rem = remark3 >= 0 ? remark3_points(ctx, remark3) : std::vector<LabeledPoint>{};
    if (format == "json") {
        json j = context_to_json(ctx);
        j["layer1"] = layer1_to_json(L);
        if (!rem.empty()) {
            json r = json::array();
            for (const auto& p : rem) r.push_back(labeled_point_to_json(p));
            j["remark3"] = r;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        auto row = [](const char* label, const Rational& v) {
            std::cout << std::left << std::setw(24) << label << " " << v.str() << "\n";
        };
        row("minP", ctx.min_p);
        row("maxP", ctx.max_p);
        row("e", ctx.e);
        row("v", ctx.v);
        row("z", ctx.z);
        row("y", ctx.y);
        row("z0", ctx.z0);
        row("d", ctx.d);
        row("u1", ctx.u1);
        row("breve_u0'", ctx.breve_u0);
        row("hat_u0", ctx.hat_u0);
        print_point_table(L.all_points());
        std::vector<const LabeledPoint*> remp;
        for (const auto& p : rem) remp.push_back(&p);
        print_point_table(remp);
        for (const auto& v : L.violations) std::cout << "violation: " << v << "\n";
    }
    return L.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_tower(const std::string& spec, const std::string& orbit, int n_max, int k_max,
              int count, const std::string& format) {
    PwlMap f = parse_map_spec(spec);
    ConstructionContext ctx = base_context(f, parse_rational_list(orbit));
    Tower tw = assemble_tower(ctx, n_max, k_max, count);
    if (format == "json") {
        std::cout << tower_to_json(tw).dump(2) << "\n";
    } else {
        for (const auto& r : tw.verification) {
            std::cout << std::left << std::setw(26) << r.label << " " << std::setw(16)
                      << r.value.str();
            if (r.claimed)
                std::cout << " claimed=" << *r.claimed << (r.guaranteed ? "" : " (reported)");
            if (r.actual) std::cout << " actual=" << *r.actual;
            std::cout << (r.pass ? " ok" : " MISMATCH") << "\n";
        }
        for (const auto& v : tw.violations) std::cout << "violation: " << v << "\n";
        std::cout << (tw.pass ? "pass" : "FAIL") << "\n";
    }
    return tw.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const std::vector<int>& only) {
    for (int id : only) {
        if (id < 1 || id > 12) {
            std::cerr << "verify: no criterion " << id << " (valid: 1..12)\n";
            return kExitUsage;
        }
    }
    auto results = run_acceptance(only);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d (%6.2f s): %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.seconds, r.name.c_str());
        if (!r.pass && !r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? kExitOk : kExitVerificationFailed;
}

int cmd_plot(const std::string& kind, const std::string& spec, const std::string& start,
             int steps, int upto) {
    PwlMap f = parse_map_spec(spec);
    if (kind == "graph") {
        std::cout << "x,y,x_approx,y_approx\n";
        for (const auto& n : f.nodes())
            std::cout << n.x.str() << "," << n.y.str() << "," << approx12(n.x) << ","
                      << approx12(n.y) << "\n";
        return kExitOk;
    }
    if (kind == "cobweb") {
        if (start.empty()) throw CLI::ValidationError("cobweb needs --start");
        Rational x = Rational::parse(start);
        std::cout << "step,x,y,x_approx,y_approx\n";
        Rational y(0);
        std::cout << 0 << "," << x.str() << "," << y.str() << "," << approx12(x) << ","
                  << approx12(y) << "\n";
        for (int i = 1; i <= steps; ++i) {
            Rational fx = f.eval(x);
            std::cout << i << "," << x.str() << "," << fx.str() << "," << approx12(x) << ","
                      << approx12(fx) << "\n";
            std::cout << i << "," << fx.str() << "," << fx.str() << "," << approx12(fx) << ","
                      << approx12(fx) << "\n";
            x = fx;
        }
        return kExitOk;
    }
    if (kind == "orbit_rows") {
        MapPowers pw(f);
        std::cout << "least_period,orbit_min,orbit_max,diameter,diameter_approx,points\n";
        for (int n = 1; n <= upto; ++n) {
            for (const auto& o : orbits_of_period(pw, n)) {
                std::cout << o.least_period << "," << o.min().str() << "," << o.max().str()
                          << "," << o.diameter.str() << "," << approx12(o.diameter) << ",";
                for (std::size_t i = 0; i < o.points.size(); ++i)
                    std::cout << (i ? ";" : "") << o.points[i].str();
                std::cout << "\n";
            }
        }
        return kExitOk;
    }
    throw CLI::ValidationError("unknown plot kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* cap = std::getenv("PWLDYN_PIECE_CAP")) {
        set_piece_cap(std::strtoull(cap, nullptr, 10));
    }

    CLI::App app{"exact periodic-orbit toolkit for piecewise-linear interval maps"};
    app.require_subcommand(1);
    std::string spec = "tent", format = "table", cstr, window, strategy = "auto";
    std::string orbit, start, kind;
    int k = 1, period = 0, upto = 0, layers = 2, remark3 = -1;
    int n_max = 1, k_max = 0, count = 1, steps = 10;
    bool fixed = false;
    std::uint64_t sm = 0, sn = 0;
    std::vector<int> only;

    auto* c_map = app.add_subcommand("map", "show and validate a map");
    c_map->add_option("--map", spec);
    c_map->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));

    auto* c_solve = app.add_subcommand("solve", "exact roots of f^k(x) = c or f^k(x) = x");
    c_solve->add_option("--map", spec);
    c_solve->add_option("-k,--iterations", k)->required();
    c_solve->add_option("--const", cstr);
    c_solve->add_flag("--fixed", fixed);
    c_solve->add_option("--window", window);
    c_solve->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"auto", "iterate", "pullback"}));
    c_solve->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    auto* c_orbits = app.add_subcommand("orbits", "periodic orbits of exact least period");
    c_orbits->add_option("--map", spec);
    c_orbits->add_option("--period", period);
    c_orbits->add_option("--upto", upto);
    c_orbits->add_option("--format", format)
        ->check(CLI::IsMember({"table", "json", "csv"}));

    auto* c_shark = app.add_subcommand("sharkovsky", "ordering, closure and witness maps");
    c_shark->require_subcommand(1);
    auto* c_cmp = c_shark->add_subcommand("compare", "compare two periods");
    c_cmp->add_option("m", sm)->required();
    c_cmp->add_option("n", sn)->required();
    auto* c_clo = c_shark->add_subcommand("closure", "check forced-period closure");
    c_clo->add_option("--map", spec);
    c_clo->add_option("--upto", upto)->required();
    c_clo->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    auto* c_wit = c_shark->add_subcommand("witness", "clamped tent with exactly period k");
    c_wit->add_option("k", k)->required();
    c_wit->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    auto* c_p2 = c_shark->add_subcommand("power2", "finite-depth power-of-two clamp");
    c_p2->add_option("--levels", k)->required();
    c_p2->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    auto* c_cons = app.add_subcommand("construct", "base landmarks and tower layer 1");
    c_cons->add_option("--map", spec);
    c_cons->add_option("--orbit", orbit)->required();
    c_cons->add_option("--layers", layers);
    c_cons->add_option("--remark3", remark3);
    c_cons->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    auto* c_tower = app.add_subcommand("tower", "layers 2-3 of the basic tower");
    c_tower->add_option("--map", spec);
    c_tower->add_option("--orbit", orbit)->required();
    c_tower->add_option("--layer2", n_max);
    c_tower->add_option("--layer3", k_max);
    c_tower->add_option("--count", count);
    c_tower->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
    c_verify->add_option("--criterion", only);

    auto* c_plot = app.add_subcommand("plot-data", "CSV for plots");
    c_plot->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"graph", "cobweb", "orbit_rows"}));
    c_plot->add_option("--map", spec);
    c_plot->add_option("--start", start);
    c_plot->add_option("--steps", steps);
    c_plot->add_option("--upto", upto);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? kExitOk : kExitUsage;
    }

    try {
        if (*c_map) return cmd_map(spec, format);
        if (*c_solve) {
            if (!fixed && cstr.empty()) {
                std::cerr << "solve: need --const or --fixed\n";
                return kExitUsage;
            }
            return cmd_solve(spec, k, cstr, fixed, window, strategy, format);
        }
        if (*c_orbits) {
            if (period <= 0 && upto <= 0) {
                std::cerr << "orbits: need --period or --upto\n";
                return kExitUsage;
            }
            return cmd_orbits(spec, period, upto, format);
        }
        if (*c_cmp) return cmd_shark_compare(sm, sn);
        if (*c_clo) return cmd_shark_closure(spec, upto, format);
        if (*c_wit) {
            PwlMap w = minimal_witness_map(k);
            if (format == "json")
                std::cout << map_to_json(w).dump(2) << "\n";
            else
                for (const auto& n : w.nodes())
                    std::cout << "(" << n.x.str() << ", " << n.y.str() << ")\n";
            return kExitOk;
        }
        if (*c_p2) {
            Power2Approx a = power2_map_approx(k);
            if (format == "json") {
                json j = map_to_json(a.map);
                j["q0"] = a.q0.str();
                j["q1"] = a.q1.str();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "q0 " << a.q0.str() << "\nq1 " << a.q1.str() << "\n";
            }
            return kExitOk;
        }
        if (*c_cons) return cmd_construct(spec, orbit, layers, remark3, format);
        if (*c_tower) return cmd_tower(spec, orbit, n_max, k_max, count, format);
        if (*c_verify) return cmd_verify(only);
        if (*c_plot) return cmd_plot(kind, spec, start, steps, upto);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}
