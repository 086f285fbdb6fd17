// command line front end; JSON by default, CSV with --format csv
#include "sqf/acceptance.hpp"
#include "sqf/circle.hpp"
#include "sqf/density.hpp"
#include "sqf/orbits.hpp"
#include "sqf/parallel.hpp"
#include "sqf/sieve.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace sqf;

namespace {

struct Row {
    std::string name;
    std::optional<double> value;
    std::optional<IntervalValue> interval;
    std::string exact; // integers beyond double range, rationals
    std::string provenance;
};

struct Output {
    std::string command;
    std::vector<Row> rows;
    json extra = json::object();

    void value(const std::string& n, double v, const std::string& prov) { rows.push_back({n, v, {}, {}, prov}); }
    void count(const std::string& n, u128 v) {
        rows.push_back({n, double(v), {}, to_string(v), "exact"});
    }
    void interval(const std::string& n, const IntervalValue& v, const std::string& prov) {
        rows.push_back({n, {}, v, {}, prov});
    }
    void text(const std::string& n, const std::string& s, const std::string& prov = "exact") {
        rows.push_back({n, {}, {}, s, prov});
    }
};

struct Globals {
    std::string format = "json";
    int threads = 0;
    u64 seed = 20240611;
    std::string output;
    u64 budget_pairs = u64(1) << 30;
    u64 budget_fft = u64(1) << 28;
};

json row_json(const Row& r) {
    json j;
    j["name"] = r.name;
    if (r.interval) {
        j["interval"] = {{"lower", r.interval->lower}, {"upper", r.interval->upper}};
        if (!r.interval->description.empty()) j["method"] = r.interval->description;
    } else if (!r.exact.empty() && !r.value) {
        j["value"] = r.exact;
    } else if (r.value) {
        if (!r.exact.empty() && r.exact.size() < 16)
            j["value"] = std::stoll(r.exact);
        else if (!r.exact.empty())
            j["value"] = r.exact;
        else
            j["value"] = *r.value;
    }
    j["provenance"] = r.provenance;
    return j;
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void emit(const Output& out, const Globals& g, double seconds) {
    std::ostringstream os;
    if (g.format == "csv") {
        os << "name,value,lower,upper\n";
        for (auto& r : out.rows) {
            os << csv_field(r.name) << ',';
            if (r.interval)
                os << num(r.interval->mid()) << ',' << num(r.interval->lower) << ',' << num(r.interval->upper);
            else if (!r.exact.empty())
                os << csv_field(r.exact) << ",,";
            else if (r.value)
                os << num(*r.value) << ",,";
            else
                os << ",,";
            os << '\n';
        }
    } else {
        json j;
        j["command"] = out.command;
        j["results"] = json::array();
        for (auto& r : out.rows) j["results"].push_back(row_json(r));
        for (auto& [k, v] : out.extra.items()) j[k] = v;
        j["metadata"] = {{"runtime_seconds", seconds},
                         {"threads", resolve_threads(g.threads)},
                         {"seed", g.seed},
                         {"normalization", "matrices are stored as 4B so that 4B is integral; widths and counts refer to "
                                           "the integer entries b_ij of B"}};
        os << j.dump(2) << '\n';
    }
    if (g.output.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(g.output);
        if (!f) throw std::runtime_error("cannot open " + g.output);
        f << os.str();
    }
}

BoxMode parse_mode(const std::string& s) { return s == "closed" ? BoxMode::closed : BoxMode::strict; }

// "b11=1,b34=-2" style base point
VSlice parse_slice(const std::string& spec) {
    static const char* names[9] = {"b11", "b12", "b13", "b14", "b22", "b24", "b33", "b34", "b44"};
    VSlice v;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad base point entry '" + item + "'");
        std::string key = item.substr(0, eq);
        int k = -1;
        for (int i = 0; i < 9; ++i)
            if (key == names[i]) k = i;
        if (k < 0) throw std::invalid_argument("unknown coordinate '" + key + "' (b23 is tied to -b14)");
        v.b[k] = std::stoll(item.substr(eq + 1));
    }
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"squarefree values of binary forms beta a^4 + alpha b^3"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", g.threads, "worker threads (0: SQFREE_THREADS or hardware)");
    app.add_option("--seed", g.seed, "seed for sampling");
    app.add_option("--output", g.output, "write to this file instead of stdout");
    app.add_option("--budget-pairs", g.budget_pairs, "largest pair box to enumerate");
    app.add_option("--budget-fft", g.budget_fft, "largest FFT length for lattice counts");

    Output out;
    std::function<void()> action;
    int exit_code = 0;

    // density
    i64 alpha = 256, beta = -27;
    u64 pmax = 100000, table_pmax = 0;
    auto* den = app.add_subcommand("density", "Euler product for the density of squarefree values");
    den->add_option("--alpha", alpha);
    den->add_option("--beta", beta);
    den->add_option("--pmax", pmax);
    den->add_option("--table", table_pmax, "list local factors for p up to this bound");
    den->callback([&] {
        action = [&] {
            auto e = euler_product(alpha, beta, pmax, table_pmax);
            out.interval("density", e.value, "computed");
            out.interval("finite_product", e.finite_part, "computed");
            Fraction f = partial_product(alpha, beta, {2, 3});
            out.text("product_p_2_3", to_string(f.num) + "/" + to_string(f.den));
            out.value("primes_used", double(e.primes_used), "exact");
            json t = json::array();
            for (auto& fct : e.factors)
                t.push_back({{"p", fct.p}, {"rho_p2", fct.rho_p2}, {"factor", fct.factor}, {"closed_form", fct.closed_form}});
            if (!t.empty()) out.extra["local_factors"] = t;
        };
    });

    // count
    u64 X = 8, m = 0;
    std::string mode = "strict";
    bool check_moebius = false, naive = false;
    auto* cnt = app.add_subcommand("count", "count pairs with squarefree values");
    cnt->add_option("--X", X)->required();
    cnt->add_option("--alpha", alpha);
    cnt->add_option("--beta", beta);
    cnt->add_option("--m", m, "count pairs with m^2 dividing the value instead");
    cnt->add_option("--mode", mode, "strict: |a| < X^3, |b| < X^4; closed: <=")->check(CLI::IsMember({"strict", "closed"}));
    cnt->add_flag("--check-moebius", check_moebius);
    cnt->add_flag("--naive", naive, "per pair factoring, small X only");
    cnt->callback([&] {
        action = [&] {
            check_density_params(alpha, beta);
            BoxMode bm = parse_mode(mode);
            if (m) {
                out.count("N_m", count_Nm(X, alpha, beta, m, bm, g.budget_pairs));
                out.value("m", double(m), "exact");
                return;
            }
            CountResult c;
            if (naive) {
                c = count_N_naive(X, alpha, beta, bm);
            } else {
                SieveOptions o;
                o.mode = bm;
                o.threads = g.threads;
                o.budget_pairs = g.budget_pairs;
                c = count_N(X, alpha, beta, o);
            }
            out.count("N", c.count);
            out.count("pairs", c.pairs);
            out.value("ratio", c.density(), "computed");
            if (check_moebius) {
                auto mc = moebius_identity(X, alpha, beta, bm);
                out.text("moebius_sum", to_string(mc.moebius_sum));
                out.count("zero_pairs", mc.zero_pairs);
                out.value("mertens", double(mc.mertens), "exact");
                out.extra["identity_holds"] = mc.holds;
                if (!mc.holds) exit_code = 1;
            }
        };
    });

    // tail
    u64 M = 1;
    auto* tail = app.add_subcommand("tail", "pairs with m^2 | value for squarefree m > M");
    tail->add_option("--X", X)->required();
    tail->add_option("--M", M)->required();
    tail->add_option("--alpha", alpha);
    tail->add_option("--beta", beta);
    tail->callback([&] {
        action = [&] {
            check_density_params(alpha, beta);
            out.count("tail", tail_sum(X, M, alpha, beta));
        };
    });

    // classify
    i64 a = 0, b = 0;
    u64 p = 5;
    auto* cls = app.add_subcommand("classify", "strong or weak divisibility of the discriminant by p^2");
    u64 wx = 0;
    cls->add_option("--a", a);
    cls->add_option("--b", b);
    cls->add_option("--p", p, "prime for a single pair, or modulus m for --W");
    cls->add_option("--W", wx, "enumerate strong and weak pairs of height < this for modulus --p");
    cls->callback([&] {
        action = [&] {
            if (wx > 0) {
                for (auto kind : {DivisibilityKind::strong, DivisibilityKind::weak}) {
                    auto W = enumerate_W(wx, p, kind, g.budget_pairs);
                    out.count(std::string("W_") + to_string(kind), W.size());
                    json list = json::array();
                    for (size_t i = 0; i < W.size() && i < 200; ++i) list.push_back({W[i].a, W[i].b});
                    out.extra[std::string("W_") + to_string(kind) + "_first"] = list;
                }
                return;
            }
            if (!is_prime(p)) throw std::invalid_argument("--p must be prime");
            auto c = classify(a, b, p);
            out.text("discriminant", to_string(delta(a, b)));
            out.text("kind", to_string(c.kind), "computed");
        };
    });

    // embed
    auto* emb = app.add_subcommand("embed", "integral matrix pencil for a weakly divisible pair");
    emb->add_option("--a", a)->required();
    emb->add_option("--b", b)->required();
    emb->add_option("--m", m)->required();
    emb->callback([&] {
        action = [&] {
            auto e = sigma_m(a, b, m);
            json mat = json::array();
            for (int i = 0; i < 4; ++i) {
                json row = json::array();
                for (int j = 0; j < 4; ++j) row.push_back(e.matrix.entry(i, j).str());
                mat.push_back(row);
            }
            out.extra["matrix"] = mat;
            out.value("shift", double(e.shift), "exact");
            out.text("invariant_poly", invariant_poly(e.matrix).str());
            out.text("Q", q_invariant(e.matrix).str());
            out.extra["divisibility_ok"] = e.divisibility_ok;
        };
    });

    // dp
    std::string method = "orbit";
    u64 max_brute = 5;
    auto* dp = app.add_subcommand("dp", "non-distinguished matrices over F_p");
    u64 dp_table = 0;
    dp->add_option("--p", p);
    dp->add_option("--table", dp_table, "orbit formula values for all odd primes up to this");
    dp->add_option("--method", method)->check(CLI::IsMember({"orbit", "brute"}));
    dp->add_option("--max-brute-p", max_brute, "refuse brute force above this prime");
    dp->callback([&] {
        action = [&] {
            if (dp_table) {
                json t = json::array();
                for (u64 q : primes_up_to(dp_table)) {
                    if (q == 2) continue;
                    u64 d = count_dp(q, DpMethod::orbit_formula);
                    t.push_back({{"p", q}, {"d_p", d}, {"d_p_over_p8", double(d) / std::pow(double(q), 8)}});
                    out.value("d_" + std::to_string(q), double(d), "exact");
                }
                out.extra["table"] = t;
                return;
            }
            if (method == "brute") {
                auto c = dp_census_brute(p, max_brute, g.threads);
                out.count("d_p", c.dp);
                out.count("matrices_over_U", c.in_U);
                out.count("fiber_min", c.fiber_min);
                out.count("fiber_max", c.fiber_max);
                out.value("d_p_over_p8", double(c.dp) / std::pow(double(p), 8), "computed");
            } else {
                u64 d = count_dp(p, DpMethod::orbit_formula);
                out.count("d_p", d);
                out.value("d_p_over_p8", double(d) / std::pow(double(p), 8), "computed");
            }
            out.count("group_order", group_order_fp(p));
        };
    });

    // singular
    u64 rmax = 10;
    double tol = 1e-9, sx = 0, c2 = 1;
    std::string integral = "slab";
    u64 samples = 10000000;
    auto* sing = app.add_subcommand("singular", "singular series terms and the singular integral");
    sing->add_option("--rmax", rmax, "print C_q(r) for r up to this");
    u64 sp_max = 13;
    sing->add_option("--tol", tol);
    sing->add_option("--local", sp_max, "local factors S(q;p) for p up to this");
    sing->add_option("--X", sx, "also evaluate the singular integral on the standard box of this size");
    sing->add_option("--c2", c2);
    sing->add_option("--integral", integral)->check(CLI::IsMember({"slab", "mc"}));
    sing->add_option("--samples", samples);
    sing->callback([&] {
        action = [&] {
            for (u64 r = 1; r <= rmax; ++r) {
                auto c = Cq_value(r, CqMethod::ramanujan);
                out.interval("C_q(" + std::to_string(r) + ")", IntervalValue::around(c.value, c.error), "computed");
            }
            out.interval("singular_series", singular_series(tol), "computed");
            for (u64 q : primes_up_to(sp_max))
                out.interval("S_p(" + std::to_string(q) + ")", singular_series_p(q, tol), "computed");
            if (sx > 0) {
                IntegralOptions o;
                o.seed = g.seed;
                o.samples = samples;
                o.threads = g.threads;
                auto r = singular_integral(BoxSpec::standard(sx, c2),
                                           integral == "mc" ? IntegralMethod::montecarlo : IntegralMethod::slab, o);
                out.interval("singular_integral", r.value, integral == "mc" ? "sampled" : "computed");
            }
        };
    });

    // lattice
    double lx = 100;
    std::string base;
    auto* lat = app.add_subcommand("lattice", "count q = 0 points in a box and compare with the main term");
    lat->add_option("--X", lx);
    lat->add_option("--c2", c2);
    lat->add_option("--m", m, "congruence modulus, odd squarefree");
    lat->add_option("--B0", base, "base point such as b11=1 (zero when omitted)");
    lat->add_flag("--nested", naive, "use the nine nested loops instead of FFT");
    lat->callback([&] {
        action = [&] {
            u64 mm = m ? m : 1;
            VSlice B0 = parse_slice(base);
            BoxSpec box = BoxSpec::standard(lx, c2);
            if (naive) {
                out.count("count", lattice_count_nested(integer_widths(box), mm, B0));
                return;
            }
            // slab integral scales as X^7 exactly, so the X = 1 value is reused
            IntegralResult s1 = singular_integral(BoxSpec::standard(1, c2), IntegralMethod::slab);
            double k = std::pow(lx, 7);
            IntervalValue S_inf{s1.value.lower * k, s1.value.upper * k, {}};
            IntervalValue S_q = singular_series(1e-9);
            auto cmp = lattice_main_term(box, mm, B0, S_inf, S_q);
            out.count("count", cmp.count);
            out.value("predicted", cmp.predicted, "computed");
            out.value("ratio", cmp.ratio, "computed");
            out.interval("singular_integral", S_inf, "computed");
        };
    });

    // selberg
    u64 plo = 7, phi = 101;
    double D = 1e8, z = 102;
    auto* sel = app.add_subcommand("selberg", "local sieve weights g(p) and the sum H");
    sel->add_option("--plo", plo);
    sel->add_option("--phi", phi);
    sel->add_option("--D", D);
    sel->add_option("--z", z);
    sel->callback([&] {
        action = [&] {
            auto t = selberg_quantities(plo, phi, D, z);
            json rows = json::array();
            for (auto& r : t.rows) {
                rows.push_back({{"p", r.p}, {"d_p", r.dp}, {"S_p", r.Sp.mid()}, {"g", r.g}, {"h", r.h}, {"in_band", r.in_band}});
                out.value("g(" + std::to_string(r.p) + ")", r.g, "computed");
            }
            out.extra["rows"] = rows;
            out.value("H", t.H, "computed");
            out.value("terms", double(t.terms), "exact");
            out.value("pass_fraction", t.pass_fraction, "computed");
        };
    });

    // verify
    AcceptanceOptions aopt;
    auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
    ver->add_flag("--quick", aopt.quick);
    ver->add_flag("--long", aopt.long_run);
    ver->add_option("--only", aopt.only);
    ver->callback([&] {
        action = [&] {
            aopt.seed = g.seed;
            aopt.threads = g.threads;
            json crit = json::array();
            auto res = run_acceptance(aopt, [](const CriterionResult& r) { std::cerr << format_line(r) << std::endl; });
            for (auto& r : res) {
                crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
                out.value("criterion_" + std::to_string(r.id), r.pass ? 1 : 0, "computed");
                if (!r.pass) exit_code = 1;
            }
            out.extra["criteria"] = crit;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    out.command = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();
    try {
        action();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(out, g, secs);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
