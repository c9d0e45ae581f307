// torgeo: generalized toric codes over F_q and the affine ring plane
// over Z/<q-1>.  Subcommands: field, geom, code, bounds, equiv, search,
// verify.  Exit codes: 0 success, 1 usage error, 2 budget exceeded,
// 3 verification failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torgeo/bounds.hpp"
#include "torgeo/common.hpp"
#include "torgeo/gf.hpp"
#include "torgeo/pointset_io.hpp"
#include "torgeo/ringgeo.hpp"
#include "torgeo/search.hpp"
#include "torgeo/torcode.hpp"

using nlohmann::json;
using namespace torgeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerifyFailed = 3;

std::vector<int> parse_csv_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

// (p, r) for a prime power q.
std::pair<int, int> factor_prime_power(int q) {
    for (int p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        int r = 0, t = q;
        while (t % p == 0) { t /= p; ++r; }
        if (t != 1) fail(errc::bad_input, "q = " + std::to_string(q) + " is not a prime power");
        return {p, r};
    }
    fail(errc::bad_input, "invalid q");
}

FieldSpec field_for_q(int q) {
    auto [p, r] = factor_prime_power(q);
    return FieldSpec::make(p, r);
}

ExponentSet load_exponent_set(const std::string& path, int m, int q) {
    auto raw = load_point_file(path);
    for (const auto& v : raw)
        if (static_cast<int>(v.size()) != m)
            fail(errc::bad_input, "point in " + path + " has " + std::to_string(v.size()) +
                                      " coordinates, expected " + std::to_string(m));
    return ExponentSet::from_raw(m, q, raw);
}

PointSet load_ring_points(const std::string& path, int r) {
    auto raw = load_point_file(path);
    PointSet out;
    for (const auto& v : raw) out.emplace_back(v, r);
    return out;
}

json point_to_json(const RingPoint& p) { return json(p.c); }

json pointset_to_json(const PointSet& S) {
    json arr = json::array();
    for (const auto& p : S) arr.push_back(point_to_json(p));
    return arr;
}

json bound_report_to_json(const BoundReport& r) {
    json j{{"bound", r.bound}, {"kind", r.kind}, {"witness", pointset_to_json(r.witness_points)}};
    json decs = json::array();
    for (const auto& d : r.decomposition)
        decs.push_back(json{{"N", d.N}, {"w", point_to_json(d.w)}});
    j["decomposition"] = decs;
    return j;
}

json code_report_to_json(const CodeReport& rep) {
    json j{{"schema", 1},
           {"n", rep.n},
           {"k", rep.k},
           {"d", rep.d},
           {"method", rep.method},
           {"seconds", rep.elapsed_seconds}};
    if (rep.weight_distribution) j["weights"] = *rep.weight_distribution;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"generalized toric codes and finite ring geometries"};
    app.require_subcommand(1);

    // ---- field ----
    auto* field_cmd = app.add_subcommand("field", "print F_q tables");
    int f_p = 0, f_r = 1;
    std::string f_modulus;
    field_cmd->add_option("--p", f_p, "prime characteristic")->required();
    field_cmd->add_option("--r", f_r, "extension degree");
    field_cmd->add_option("--modulus", f_modulus, "monic modulus coefficients c0,c1,...");

    // ---- geom ----
    auto* geom_cmd = app.add_subcommand("geom", "affine plane over Z/<r>");
    int g_r = 0, g_q = 0;
    geom_cmd->add_option("--r", g_r, "ring modulus r");
    geom_cmd->add_option("--q", g_q, "field order; implies r = q-1");
    auto* lines_cmd = geom_cmd->add_subcommand("lines", "all lines through two points");
    std::string l_p, l_q;
    lines_cmd->add_option("--p", l_p, "first point a,b")->required();
    lines_cmd->add_option("--q", l_q, "second point c,d")->required();
    auto* nb_cmd = geom_cmd->add_subcommand("neighbors", "all neighbors of a point");
    std::string n_p;
    nb_cmd->add_option("--p", n_p, "point a,b")->required();
    geom_cmd->require_subcommand(1);

    // ---- code ----
    auto* code_cmd = app.add_subcommand("code", "parameters of C_S(F_q)");
    int c_q = 0, c_m = 2, c_threads = 0;
    std::string c_file, c_strategy = "scalar-class";
    bool c_dist = false, c_json = true;
    std::optional<long long> c_budget;
    long long c_budget_raw = -1;
    code_cmd->add_option("--q", c_q, "field order")->required();
    code_cmd->add_option("--m", c_m, "dimension");
    code_cmd->add_option("--s", c_file, "exponent-set file")->required();
    code_cmd->add_option("--strategy", c_strategy, "full|scalar-class|parallel");
    code_cmd->add_flag("--dist", c_dist, "compute the full weight distribution");
    code_cmd->add_flag("--json", c_json, "JSON output (default)");
    code_cmd->add_option("--threads", c_threads, "worker cap for the parallel strategy");
    code_cmd->add_option("--budget", c_budget_raw, "symbol-operation budget override");

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "geometric distance bounds for S");
    int b_q = 0;
    std::string b_file;
    bool b_frob = false;
    bounds_cmd->add_option("--q", b_q, "field order")->required();
    bounds_cmd->add_option("--s", b_file, "exponent-set file")->required();
    bounds_cmd->add_flag("--scan-frobenius", b_frob, "also scan Frobenius images");

    // ---- equiv ----
    auto* equiv_cmd = app.add_subcommand("equiv", "AGL(2, Z/<r>) equivalence of point sets");
    int e_r = 0, e_q = 0;
    std::string e_s1, e_s2;
    equiv_cmd->add_option("--r", e_r, "ring modulus r");
    equiv_cmd->add_option("--q", e_q, "field order; implies r = q-1");
    equiv_cmd->add_option("--s1", e_s1, "first point-set file")->required();
    equiv_cmd->add_option("--s2", e_s2, "second point-set file")->required();

    // ---- search ----
    auto* search_cmd = app.add_subcommand("search", "heuristic search for good S");
    SearchConfig cfg;
    std::string s_strategy = "random", s_start, s_ledger;
    search_cmd->add_option("--q", cfg.q, "field order")->required();
    search_cmd->add_option("--m", cfg.m, "dimension");
    search_cmd->add_option("--k", cfg.k, "target dimension |S|")->required();
    search_cmd->add_option("--seed", cfg.seed, "64-bit RNG seed")->required();
    search_cmd->add_option("--iters", cfg.iterations, "iteration budget")->required();
    search_cmd->add_option("--strategy", s_strategy, "random|local");
    search_cmd->add_option("--start", s_start, "start set file (local strategy)");
    search_cmd->add_option("--ledger", s_ledger, "JSON Lines ledger output path");
    search_cmd->add_option("--threads", cfg.threads, "worker cap per evaluation");
    bool s_exact = false;
    search_cmd->add_flag("--exact", s_exact, "disable bound-first pruning");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "verify algebraic identities");
    auto* fact_cmd = verify_cmd->add_subcommand("factexact", "binomial factorization on the torus");
    int v_q = 0, v_a = 0, v_b = 0, v_n = 0;
    std::string v_w;
    fact_cmd->add_option("--q", v_q, "field order")->required();
    fact_cmd->add_option("--a", v_a, "exponent a")->required();
    fact_cmd->add_option("--b", v_b, "exponent b")->required();
    fact_cmd->add_option("--n", v_n, "divisor N of q-1")->required();
    fact_cmd->add_option("--w", v_w, "direction u,v")->required();
    verify_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (c_budget_raw > 0) c_budget = c_budget_raw;

    if (*field_cmd) {
        std::optional<std::vector<int>> mod;
        if (!f_modulus.empty()) mod = parse_csv_ints(f_modulus);
        auto F = FieldSpec::make(f_p, f_r, mod);
        std::cout << "q = " << F.q() << "\n";
        std::cout << "modulus =";
        for (int c : F.modulus()) std::cout << " " << c;
        std::cout << "\n";
        for (int i = 0; i < F.q() - 1; ++i) {
            auto v = F.unpack(F.exp_code(i));
            std::cout << "alpha^" << i << " =";
            for (int c : v) std::cout << " " << c;
            std::cout << "\n";
        }
        return kExitOk;
    }

    if (*geom_cmd) {
        int r = g_q > 0 ? g_q - 1 : g_r;
        if (r < 2) fail(errc::bad_input, "need --r or --q");
        if (*lines_cmd) {
            RingPoint P(parse_csv_ints(l_p), r), Q(parse_csv_ints(l_q), r);
            auto lines = lines_through(P, Q);
            std::cout << lines.size() << " line(s) through " << P.str() << " and " << Q.str()
                      << " mod " << r << "\n";
            for (const auto& line : lines) {
                std::cout << "base " << line.base.str() << " dir " << line.dir.v.str() << " :";
                for (const auto& pt : line.points) std::cout << " " << pt.str();
                std::cout << "\n";
            }
        } else {
            RingPoint P(parse_csv_ints(n_p), r);
            std::vector<RingPoint> nbrs;
            std::vector<int> f(P.dim(), 0);
            long long total = 1;
            for (int i = 0; i < P.dim(); ++i) total *= r;
            for (long long idx = 0; idx < total; ++idx) {
                RingPoint Q(f, r);
                if (Q != P && is_neighbor(P, Q)) nbrs.push_back(Q);
                for (int j = P.dim() - 1; j >= 0; --j) {
                    if (++f[j] < r) break;
                    f[j] = 0;
                }
            }
            std::cout << nbrs.size() << " neighbor(s) of " << P.str() << " mod " << r << "\n";
            for (const auto& p : nbrs) std::cout << p.str() << "\n";
        }
        return kExitOk;
    }

    if (*code_cmd) {
        auto strat = parse_strategy(c_strategy);
        if (!strat) fail(errc::bad_input, "unknown strategy: " + c_strategy);
        auto F = field_for_q(c_q);
        auto S = load_exponent_set(c_file, c_m, c_q);
        auto G = build_generator(S, F);
        CodeReport rep = c_dist ? weight_distribution(G, F, *strat, c_budget, c_threads)
                                : min_distance(G, F, *strat, c_budget, c_threads);
        std::cout << code_report_to_json(rep).dump() << "\n";
        return kExitOk;
    }

    if (*bounds_cmd) {
        auto F = field_for_q(b_q);
        auto S = load_exponent_set(b_file, 2, b_q);
        auto scan = bad_configuration_scan(S, F, b_frob);
        json out = json::array();
        if (scan.neighbor) out.push_back(bound_report_to_json(*scan.neighbor));
        if (scan.parallelogram) out.push_back(bound_report_to_json(*scan.parallelogram));
        for (const auto& flag : scan.collinear) {
            json j{{"kind", "collinear-flag"},
                   {"subset", pointset_to_json(flag.subset)},
                   {"line_base", point_to_json(flag.line_base)},
                   {"line_dir", point_to_json(flag.line_dir)}};
            if (flag.frobenius_power) j["frobenius_power"] = flag.frobenius_power;
            out.push_back(j);
        }
        std::cout << json{{"schema", 1}, {"reports", out}}.dump() << "\n";
        return kExitOk;
    }

    if (*equiv_cmd) {
        int r = e_q > 0 ? e_q - 1 : e_r;
        if (r < 2) fail(errc::bad_input, "need --r or --q");
        auto S1 = load_ring_points(e_s1, r);
        auto S2 = load_ring_points(e_s2, r);
        auto T = are_agl_equivalent(S1, S2);
        json out{{"schema", 1}, {"equivalent", T.has_value()}};
        if (T) {
            out["matrix"] = json{T->M[0], T->M[1]};
            out["translation"] = point_to_json(T->v);
        }
        std::cout << out.dump() << "\n";
        return T ? kExitOk : kExitVerifyFailed;
    }

    if (*search_cmd) {
        cfg.eval_mode = s_exact ? EvalMode::exact : EvalMode::bound_first;
        auto F = field_for_q(cfg.q);
        SearchResult res = [&] {
            if (s_strategy == "local") {
                if (s_start.empty()) fail(errc::bad_input, "local strategy requires --start");
                return local_swap_search(cfg, F, load_ring_points(s_start, cfg.q - 1));
            }
            if (s_strategy != "random") fail(errc::bad_input, "unknown strategy: " + s_strategy);
            std::optional<PointSet> seed_set;
            if (!s_start.empty()) seed_set = load_ring_points(s_start, cfg.q - 1);
            return random_search(cfg, F, seed_set);
        }();

        if (!s_ledger.empty()) {
            std::ofstream lf(s_ledger);
            if (!lf) fail(errc::bad_input, "cannot open ledger file: " + s_ledger);
            for (const auto& rec : res.ledger) {
                json j{{"S", pointset_to_json(rec.S)}, {"q", rec.q},       {"m", rec.m},
                       {"d", rec.d},                   {"seed", rec.seed}, {"iteration", rec.iteration},
                       {"timestamp", rec.timestamp}};
                if (rec.bound) j["bound"] = *rec.bound;
                lf << j.dump() << "\n";
            }
        }
        json out{{"schema", 1},
                 {"best_S", pointset_to_json(res.best.points)},
                 {"d", res.report.d},
                 {"n", res.report.n},
                 {"k", res.report.k},
                 {"evaluations", res.ledger.size()}};
        std::cout << out.dump() << "\n";
        return kExitOk;
    }

    if (*verify_cmd) {
        auto F = field_for_q(v_q);
        auto w = parse_csv_ints(v_w);
        if (w.size() != 2) fail(errc::bad_input, "--w expects u,v");
        bool ok = verify_binomfact(v_a, v_b, v_n, Direction(RingPoint(w, v_q - 1)), F);
        std::cout << (ok ? "factexact holds" : "factexact FAILS") << "\n";
        return ok ? kExitOk : kExitVerifyFailed;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::budget_exceeded ? kExitBudget : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
