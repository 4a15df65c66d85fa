/* Command-line front end.  Subcommands map 1:1 onto library operations;
   every large integer crosses this boundary as a decimal string.

   Exit codes: 0 success, 2 validation error, 3 hypothesis not met /
   nothing found, 4 resource cap, 5 internal consistency failure. */

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iepoly/certificates.hpp"
#include "iepoly/coeffs.hpp"
#include "iepoly/primesearch.hpp"
#include "iepoly/theorems.hpp"
#include "iepoly/version.hpp"

using namespace iepoly;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Int parse_int(const std::string& text, const std::string& flag) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw validation_error("flag " + flag + ": '" + text + "' is not an integer");
    }
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

struct RunContext {
    std::size_t max_cells = kDefaultMaxCells;
    bool no_cache = false;
    std::string cache_dir;
    std::string manifest_path;

    fs::path cache_root() const {
        if (!cache_dir.empty())
            return cache_dir;
        if (const char* env = std::getenv("IEPOLY_CACHE_DIR"))
            return env;
        return ".iepoly-cache";
    }

    static std::string cache_name(const std::string& key) {
        // key the cache by toolkit version so format changes never replay stale bytes
        return hex64(fnv1a(std::string(IEPOLY_VERSION) + "|" + key)) + ".out";
    }

    std::optional<std::string> cache_read(const std::string& key) const {
        if (no_cache)
            return std::nullopt;
        fs::path file = cache_root() / cache_name(key);
        std::ifstream in(file, std::ios::binary);
        if (!in)
            return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void cache_write(const std::string& key, const std::string& output) const {
        if (no_cache)
            return;
        std::error_code ec;
        fs::create_directories(cache_root(), ec);
        if (ec)
            return; // cache is best-effort
        fs::path file = cache_root() / cache_name(key);
        fs::path tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                return;
            out << output;
        }
        fs::rename(tmp, file, ec); // atomic publish
    }

    void manifest(const std::string& command, const std::string& key,
                  const std::string& output, double wall_ms) const {
        if (manifest_path.empty())
            return;
        json m;
        m["command"] = command;
        m["parameters"] = key;
        m["version"] = IEPOLY_VERSION;
        m["wall_ms"] = wall_ms;
        m["max_cells"] = max_cells;
        m["output_fnv64"] = hex64(fnv1a(output));
        std::ofstream out(manifest_path, std::ios::trunc);
        out << m.dump(2) << "\n";
    }
};

/* Runs a command body with caching and manifest emission around it. */
int run_cached(const RunContext& ctx, const std::string& command, const std::string& key,
               const std::function<std::string()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string output;
    if (auto hit = ctx.cache_read(key)) {
        output = *hit;
    } else {
        output = body();
        ctx.cache_write(key, output);
    }
    std::cout << output;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    ctx.manifest(command, key, output, ms);
    return 0;
}

json set_to_json(const CoeffResult& res) {
    json s;
    s["degree"] = res.degree.get_str();
    s["min"] = res.set_min;
    s["max"] = res.set_max;
    s["diameter"] = res.diameter;
    s["values"] = res.values;
    return s;
}

std::string orientation_name(const CoeffResult& res, const Int& P) {
    Int lo = -(P - 1) / 2, hi = (P + 1) / 2;
    if (Int(res.set_min) == lo && Int(res.set_max) == hi)
        return "stated";
    if (Int(res.set_min) == -hi && Int(res.set_max) == -lo)
        return "reflected";
    return "neither";
}

int run_selftest(const RunContext& ctx);

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ternary inclusion-exclusion polynomial toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.failure_message(CLI::FailureMessage::help);

    RunContext ctx;
    app.add_option("--max-cells", ctx.max_cells, "dense coefficient cell cap");
    app.add_flag("--no-cache", ctx.no_cache, "bypass the result cache");
    app.add_option("--cache-dir", ctx.cache_dir, "cache directory (or $IEPOLY_CACHE_DIR)");
    app.add_option("--manifest", ctx.manifest_path, "write a run manifest to this file");

    std::string p_s, q_s, r_s, m_s, eps_s = "0.05", engine = "truncated", csv_path;
    std::string file_path;
    unsigned long a_exp = 1, b_exp = 1;
    long slack = 6;
    unsigned long min_r_digits = 0;
    uint64_t scan_budget = 5'000'000;
    int retries = 6;
    bool full_verify = false;
    std::string pmax_s, qmax_s, rmax_s;

    auto add_pqr = [&](CLI::App* cmd) {
        cmd->add_option("--p", p_s, "first element")->required();
        cmd->add_option("--q", q_s, "second element")->required();
        cmd->add_option("--r", r_s, "third element")->required();
    };

    CLI::App* c_coeffs = app.add_subcommand("coeffs", "full coefficient vector");
    add_pqr(c_coeffs);
    c_coeffs->add_option("--engine", engine, "oracle | truncated | both")
        ->check(CLI::IsMember({"oracle", "truncated", "both"}));
    c_coeffs->add_option("--csv", csv_path, "write m,a_m rows to this file");

    CLI::App* c_at = app.add_subcommand("coeff-at", "single coefficient, O(p) point query");
    add_pqr(c_at);
    c_at->add_option("--m", m_s, "index, decimal (may be huge)")->required();

    CLI::App* c_set = app.add_subcommand("set", "coefficient set summary");
    add_pqr(c_set);

    CLI::App* c_prop4 = app.add_subcommand("prop4", "interval-family hypothesis report");
    add_pqr(c_prop4);

    CLI::App* c_thm3 = app.add_subcommand("thm3", "prime-power triple construction");
    add_pqr(c_thm3);
    c_thm3->add_option("--a", a_exp, "exponent of p")->required();
    c_thm3->add_flag("--full-verify", full_verify, "also compute the full coefficient set");

    CLI::App* c_prop5 = app.add_subcommand("prop5", "witness-coefficient certification");
    add_pqr(c_prop5);

    CLI::App* c_lemma4 = app.add_subcommand("lemma4", "exponent-pair search mod p^a");
    add_pqr(c_lemma4);
    c_lemma4->add_option("--a", a_exp, "exponent of p")->required();
    c_lemma4->add_option("--epsilon", eps_s, "margin, rational or decimal")->required();

    CLI::App* c_thm1 = app.add_subcommand("thm1", "large-coefficient pipeline");
    add_pqr(c_thm1);
    c_thm1->add_option("--a", a_exp, "exponent of p")->required();
    c_thm1->add_option("--epsilon", eps_s, "margin, rational or decimal")->required();
    c_thm1->add_option("--slack", slack, "require Q > P^slack (>= 2; 6 is faithful)");
    c_thm1->add_option("--min-r-digits", min_r_digits, "grow c until R has this many digits");
    c_thm1->add_option("--scan-budget", scan_budget, "residue progression scan budget");
    c_thm1->add_option("--retries", retries, "extra Q sizes to try when the scan misses");

    CLI::App* c_flat = app.add_subcommand("flat", "flat family member check");
    c_flat->add_option("--a", a_exp, "exponent of 3")->required();
    c_flat->add_option("--b", b_exp, "exponent of 11")->required();

    CLI::App* c_search = app.add_subcommand("search-triples", "qualifying prime triples");
    c_search->add_option("--pmax", pmax_s)->required();
    c_search->add_option("--qmax", qmax_s)->required();
    c_search->add_option("--rmax", rmax_s)->required();

    CLI::App* c_verify = app.add_subcommand("verify", "re-check a stored certificate");
    c_verify->add_option("--file", file_path, "certificate JSON (default: stdin)");

    app.add_subcommand("selftest", "bounded invariant corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_coeffs->parsed()) {
            Triple t = make_triple(parse_int(p_s, "--p"), parse_int(q_s, "--q"),
                                   parse_int(r_s, "--r"));
            std::string key = "coeffs|" + t.p.get_str() + "|" + t.q.get_str() + "|" +
                              t.r.get_str() + "|" + engine;
            // CSV emission is a side effect; keep it out of the cache
            CoeffResult res;
            bool computed = false;
            auto compute = [&] {
                if (engine == "both") {
                    res = coeff_vector(t, Engine::oracle, ctx.max_cells);
                    CoeffResult other = coeff_vector(t, Engine::truncated, ctx.max_cells);
                    if (*res.coefficients != *other.coefficients)
                        throw internal_error("coeffs: oracle and truncated engines disagree");
                } else {
                    res = coeff_vector(t,
                                       engine == "oracle" ? Engine::oracle : Engine::truncated,
                                       ctx.max_cells);
                }
                computed = true;
            };
            if (!csv_path.empty()) {
                compute();
                std::ofstream csv(csv_path, std::ios::trunc);
                if (!csv)
                    throw validation_error("coeffs: cannot open csv file " + csv_path);
                write_csv(csv, res);
            }
            return run_cached(ctx, "coeffs", key, [&] {
                if (!computed)
                    compute();
                return summary_json(t, res) + "\n";
            });
        }
        if (c_at->parsed()) {
            Triple t = make_triple(parse_int(p_s, "--p"), parse_int(q_s, "--q"),
                                   parse_int(r_s, "--r"));
            Int m = parse_int(m_s, "--m");
            std::cout << coeff_at(t, m) << "\n";
            return 0;
        }
        if (c_set->parsed()) {
            Triple t = make_triple(parse_int(p_s, "--p"), parse_int(q_s, "--q"),
                                   parse_int(r_s, "--r"));
            std::string key =
                "set|" + t.p.get_str() + "|" + t.q.get_str() + "|" + t.r.get_str();
            return run_cached(ctx, "set", key, [&] {
                CoeffResult res = coeff_set(t, ctx.max_cells);
                return summary_json(t, res) + "\n";
            });
        }
        if (c_prop4->parsed()) {
            Triple t = make_triple(parse_int(p_s, "--p"), parse_int(q_s, "--q"),
                                   parse_int(r_s, "--r"));
            Prop4Report rep = prop4_check(t, ctx.max_cells);
            json out;
            out["p"] = rep.p.get_str();
            out["q"] = rep.q.get_str();
            out["r"] = rep.r.get_str();
            out["p_odd"] = rep.p_odd;
            out["q_odd"] = rep.q_odd;
            out["q_congruent"] = rep.q_congruent;
            out["r_congruent"] = rep.r_congruent;
            out["hypotheses"] = rep.hypotheses;
            switch (rep.match) {
            case Prop4Report::Match::not_computed: out["match"] = "not_computed"; break;
            case Prop4Report::Match::stated: out["match"] = "stated"; break;
            case Prop4Report::Match::reflected: out["match"] = "reflected"; break;
            case Prop4Report::Match::neither: out["match"] = "neither"; break;
            }
            if (rep.set)
                out["set"] = set_to_json(*rep.set);
            std::cout << out.dump() << "\n";
            return rep.hypotheses ? 0 : 3;
        }
        if (c_thm3->parsed()) {
            Int p = parse_int(p_s, "--p"), q = parse_int(q_s, "--q"), r = parse_int(r_s, "--r");
            std::string key = "thm3|" + p.get_str() + "|" + q.get_str() + "|" + r.get_str() +
                              "|" + std::to_string(a_exp) + (full_verify ? "|fv" : "");
            return run_cached(ctx, "thm3", key, [&] {
                Thm3Certificate cert = thm3_construct(p, q, r, a_exp);
                json out = json::parse(to_json(cert));
                if (full_verify) {
                    if (!cert.R)
                        throw resource_error("thm3: full verification needs a materialized R");
                    Triple t = make_triple(cert.P, cert.Q, *cert.R);
                    CoeffResult set = coeff_set(t, ctx.max_cells);
                    out["full_set"] = set_to_json(set);
                    out["full_set"]["cardinality"] = set.values.size();
                    out["orientation"] = orientation_name(set, cert.P);
                }
                return out.dump() + "\n";
            });
        }
        if (c_prop5->parsed()) {
            Triple t = make_triple(parse_int(p_s, "--p"), parse_int(q_s, "--q"),
                                   parse_int(r_s, "--r"));
            Prop5Certificate cert = prop5_certify(t);
            std::cout << to_json(cert) << "\n";
            return cert.hypotheses_ok ? 0 : 3;
        }
        if (c_lemma4->parsed()) {
            Int p = parse_int(p_s, "--p"), q = parse_int(q_s, "--q"), r = parse_int(r_s, "--r");
            Rational eps = Rational::parse(eps_s);
            auto witness = lemma4_search(p, q, r, a_exp, eps);
            if (!witness) {
                std::cout << "{\"found\":false}\n";
                return 3;
            }
            json out;
            out["found"] = true;
            out["i"] = witness->i.get_str();
            out["j"] = witness->j.get_str();
            out["q_residue"] = witness->q_residue.get_str();
            out["r_residue"] = witness->r_residue.get_str();
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (c_thm1->parsed()) {
            Int p = parse_int(p_s, "--p"), q = parse_int(q_s, "--q"), r = parse_int(r_s, "--r");
            Rational eps = Rational::parse(eps_s);
            Thm1Options opts;
            opts.slack_exponent = slack;
            opts.min_r_digits = min_r_digits;
            opts.residue_scan_budget = scan_budget;
            opts.q_power_retries = retries;
            std::string key = "thm1|" + p.get_str() + "|" + q.get_str() + "|" + r.get_str() +
                              "|" + std::to_string(a_exp) + "|" + eps.str() + "|" +
                              std::to_string(slack) + "|" + std::to_string(min_r_digits);
            return run_cached(ctx, "thm1", key, [&] {
                Thm1Certificate cert = thm1_construct(p, q, r, a_exp, eps, opts);
                return to_json(cert) + "\n";
            });
        }
        if (c_flat->parsed()) {
            std::string key =
                "flat|" + std::to_string(a_exp) + "|" + std::to_string(b_exp);
            return run_cached(ctx, "flat", key, [&] {
                FlatFamilyResult res = flat_family_check(a_exp, b_exp, ctx.max_cells);
                json out;
                out["a"] = res.a;
                out["b"] = res.b;
                out["c"] = res.c.get_str();
                out["p"] = res.p.get_str();
                out["q"] = res.q.get_str();
                out["r"] = res.r.get_str();
                out["set"] = set_to_json(res.set);
                return out.dump() + "\n";
            });
        }
        if (c_search->parsed()) {
            Int pmax = parse_int(pmax_s, "--pmax"), qmax = parse_int(qmax_s, "--qmax"),
                rmax = parse_int(rmax_s, "--rmax");
            std::string key = "search-triples|" + pmax.get_str() + "|" + qmax.get_str() + "|" +
                              rmax.get_str();
            return run_cached(ctx, "search-triples", key, [&] {
                std::ostringstream os;
                for (const auto& cand : find_triples(pmax, qmax, rmax))
                    os << candidate_json(cand) << "\n";
                return os.str();
            });
        }
        if (c_verify->parsed()) {
            std::string text;
            if (file_path.empty()) {
                std::ostringstream buf;
                buf << std::cin.rdbuf();
                text = buf.str();
            } else {
                std::ifstream in(file_path);
                if (!in)
                    throw validation_error("verify: cannot open " + file_path);
                std::ostringstream buf;
                buf << in.rdbuf();
                text = buf.str();
            }
            CertificateVerification v = verify_certificate_json(text);
            json out;
            out["kind"] = v.kind;
            out["ok"] = v.outcome.ok;
            out["failures"] = v.outcome.failures;
            std::cout << out.dump() << "\n";
            return v.outcome.ok ? 0 : 5;
        }
        if (app.get_subcommand("selftest")->parsed())
            return run_selftest(ctx);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hypothesis_error& e) {
        std::cerr << "not satisfied: " << e.what() << "\n";
        return 3;
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 5;
    }
    return 2;
}

namespace {

int run_selftest(const RunContext& ctx) {
    (void)ctx;
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok)
            ++failures;
    };
    std::mt19937_64 rng(20211031);

    // modular arithmetic spot identities
    {
        bool ok = true;
        for (int trial = 0; trial < 60 && ok; ++trial) {
            Int m = 2 + rng() % 3000;
            Int g = 2 + Int(rng()) % (m > 2 ? m - 2 : Int(1));
            if (gcd(g, m) != 1)
                continue;
            Int ord = mult_order(g, m);
            ok = pow_mod(g, ord, m) == 1;
            for (const auto& [l, e] : factorize(ord)) {
                (void)e;
                ok = ok && pow_mod(g, ord / l, m) != 1;
            }
        }
        report("multiplicative orders", ok);
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 150 && ok; ++trial) {
            Int m1 = 1 + rng() % 40, m2 = 1 + rng() % 40;
            Int r1 = Int(rng()) % m1, r2 = Int(rng()) % m2;
            auto sol = crt_general(r1, m1, r2, m2);
            bool soluble = lnr(r1 - r2, gcd(m1, m2)) == 0;
            ok = sol.has_value() == soluble;
            if (sol)
                ok = ok && lnr(sol->residue, m1) == r1 && lnr(sol->residue, m2) == r2;
        }
        report("chinese remainder with shared factors", ok);
    }
    {
        bool ok = true;
        for (Int p = 3; p < 500; p += 2) {
            if (!is_prime(p))
                continue;
            bool square = false;
            for (Int x = 1; x < p && !square; ++x)
                square = x * x % p == p - 2;
            ok = ok && (legendre_minus_two(p) == +1) == square;
        }
        report("legendre symbol of -2", ok);
    }

    // representation identities on random triples
    {
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            Int a = 3 + rng() % 600, b = 3 + rng() % 600, c = 3 + rng() % 600;
            if (gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1)
                continue;
            Triple t = make_triple(a, b, c);
            Int n = Int(rng()) - Int(rng());
            Representation rep = decompose(t, n);
            ok = rep.x * t.qr + rep.y * t.pr + rep.z * t.pq + rep.delta * t.pqr == n;
            ok = ok && lnr(f_val(t, n), t.pq) == lnr(n * t.r_star, t.pq);
            ok = ok && f_val(t, t.r) == t.pq + 1 && f_val(t, -t.r) == t.pq - 1;
        }
        report("representation and f identities", ok);
    }

    // engine agreement at a bounded scale
    {
        bool ok = true;
        int done = 0;
        while (done < 8 && ok) {
            Int a = 3 + rng() % 20, b = 3 + rng() % 40, c = 3 + rng() % 60;
            if (gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1)
                continue;
            Triple t = make_triple(a, b, c);
            CoeffResult lhs = coeff_vector(t, Engine::oracle);
            CoeffResult rhs = coeff_vector(t, Engine::truncated);
            ok = *lhs.coefficients == *rhs.coefficients;
            for (int probe = 0; probe < 30 && ok; ++probe) {
                size_t m = rng() % lhs.coefficients->size();
                ok = coeff_at(t, Int(m)) == (*lhs.coefficients)[m];
            }
            ++done;
        }
        report("coefficient engines agree", ok);
    }
    {
        bool ok = true;
        Triple t = make_triple(9, 11, Int(1) << 30);
        CoeffResult res = coeff_set_scan(t);
        ok = res.set_min == -1 && res.set_max == 1;
        Triple small = make_triple(5, 7, 107);
        ok = ok && scan_applicable(small);
        CoeffResult lhs = coeff_set_scan(small);
        CoeffResult rhs = coeff_vector(small, Engine::truncated);
        ok = ok && lhs.set_min == rhs.set_min && lhs.set_max == rhs.set_max;
        report("window scan agrees with dense engines", ok);
    }

    // constructions
    {
        Prop4Report rep = prop4_check(make_triple(3, 5, 7));
        report("interval family check on (3,5,7)",
               rep.hypotheses && rep.match == Prop4Report::Match::reflected);
    }
    {
        Thm3Certificate cert = thm3_construct(3, 11, 2, 1);
        report("prime-power construction verifies",
               verify_thm3(cert).ok && cert.c == 4 && cert.Q == 11);
    }
    {
        auto witness = lemma4_search(3, 11, 2, 2, Rational::parse("0.1"));
        report("exponent-pair search", witness && witness->i == 1 && witness->j == 5);
    }
    {
        Prop5Certificate cert = prop5_certify(make_triple(5, 29, 139));
        report("witness certification", cert.hypotheses_ok && verify_prop5(cert).ok);
    }
    {
        FlatFamilyResult flat = flat_family_check(1, 1);
        report("flat family member", flat.c == 10 && flat.set.values.size() == 3);
    }
    {
        auto triples = find_triples(3, 20, 30);
        bool has = false;
        for (const auto& cand : triples)
            has = has || (cand.p == 3 && cand.q == 11 && cand.r == 2);
        report("prime triple search", has);
    }

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 5;
}

} // namespace
