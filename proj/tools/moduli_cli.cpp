#include <CLI11.hpp>

#include <moduli/cache.hpp>
#include <moduli/combinatorics.hpp>
#include <moduli/descendent.hpp>
#include <moduli/faber.hpp>
#include <moduli/hodge.hpp>
#include <moduli/mocktheta.hpp>
#include <moduli/npoint.hpp>
#include <moduli/rspin.hpp>
#include <moduli/sympoly.hpp>
#include <moduli/wp.hpp>

#include <functional>
#include <iostream>
#include <sstream>

using namespace moduli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitLimit = 3;

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

MultiIndex parse_multiindex(const std::string& s) {
    MultiIndex m;
    if (s.empty() || s == "0") return m;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) {
            long i = std::stol(tok);
            m.set(i, m.at(i) + 1);
        } else {
            long i = std::stol(tok.substr(0, colon));
            m.set(i, m.at(i) + std::stol(tok.substr(colon + 1)));
        }
    }
    return m;
}

std::vector<RSpinInsertion> parse_insertions(const std::string& s) {
    std::vector<RSpinInsertion> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) {
        auto comma = tok.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--ins", "expected n,m pairs");
        out.push_back({std::stol(tok.substr(0, comma)), std::stol(tok.substr(comma + 1))});
    }
    return out;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long g = std::stol(s);
        return {g, g};
    }
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
}

struct Options {
    std::string cache_path;
    std::string format = "text";
    std::string route = "dvv";
    long bound = 8;
};

// Memoize a printable scalar through the persistent store.
std::string cached(const Options& opt, const std::string& ns, const std::string& key,
                   const std::function<std::string()>& compute) {
    CacheStore store(opt.cache_path);
    if (auto hit = store.get(ns, key)) return *hit;
    std::string value = compute();
    store.put(ns, key, value);
    store.save();
    return value;
}

void print_scalar(const Options& opt, const std::string& name, const std::string& value) {
    if (opt.format == "records") {
        std::cout << name << " value=" << value << "\n";
    } else {
        std::cout << value << "\n";
    }
}

void print_row(const Options& opt, long g, const std::string& cells) {
    if (opt.format == "csv") {
        std::cout << g << "," << cells << "\n";
    } else if (opt.format == "records") {
        std::cout << "g=" << g << " values=" << cells << "\n";
    } else {
        std::cout << g << ": " << cells << "\n";
    }
}

void sorted_tuples(long n, long total, long max_first, std::vector<long>& cur,
                   const std::function<void(const std::vector<long>&)>& emit) {
    if (n == 0) {
        if (total == 0) emit(cur);
        return;
    }
    for (long d = std::min(total, max_first); d >= 0; --d) {
        cur.push_back(d);
        sorted_tuples(n - 1, total - d, d, cur, emit);
        cur.pop_back();
    }
}

// Known nonzero correlators of the root theories, reproduced on demand by
// the table subcommand (insertion lists only; values are recomputed).
const std::vector<std::pair<long, std::vector<RSpinInsertion>>>& rspin_catalog(long r) {
    static const std::vector<std::pair<long, std::vector<RSpinInsertion>>> r3{
        {1, {{1, 0}}},          {1, {{0, 1}, {0, 1}, {2, 1}}}, {1, {{0, 1}, {1, 1}, {1, 1}}},
        {2, {{1, 1}, {3, 1}}},  {2, {{2, 1}, {2, 1}}},         {2, {{0, 1}, {0, 1}, {5, 0}}},
        {2, {{0, 1}, {1, 1}, {4, 0}}}, {2, {{0, 1}, {2, 0}, {3, 1}}},
        {2, {{0, 1}, {2, 1}, {3, 0}}}, {2, {{1, 1}, {1, 1}, {3, 0}}},
        {2, {{1, 1}, {2, 0}, {2, 1}}}, {3, {{6, 1}}},          {3, {{0, 1}, {7, 0}}},
        {3, {{1, 1}, {6, 0}}},  {3, {{2, 0}, {5, 1}}},         {3, {{2, 1}, {5, 0}}},
        {3, {{3, 0}, {4, 1}}},  {3, {{3, 1}, {4, 0}}},         {4, {{9, 0}}},
    };
    static const std::vector<std::pair<long, std::vector<RSpinInsertion>>> r4{
        {1, {{1, 0}}},          {1, {{0, 2}, {1, 2}}},
        {1, {{0, 1}, {0, 1}, {2, 2}}}, {1, {{0, 1}, {0, 2}, {2, 1}}},
        {1, {{0, 1}, {1, 1}, {1, 2}}}, {1, {{0, 2}, {0, 2}, {2, 0}}},
        {2, {{3, 2}}},          {2, {{0, 1}, {4, 1}}},         {2, {{0, 2}, {4, 0}}},
        {2, {{1, 1}, {3, 1}}},  {2, {{1, 2}, {3, 0}}},         {2, {{2, 0}, {2, 2}}},
        {2, {{2, 1}, {2, 1}}},  {2, {{0, 1}, {0, 1}, {5, 0}}},
        {2, {{0, 1}, {1, 1}, {4, 0}}}, {2, {{0, 1}, {2, 1}, {3, 0}}},
        {2, {{1, 1}, {1, 1}, {3, 0}}}, {2, {{1, 1}, {2, 0}, {2, 1}}},
        {2, {{0, 2}, {2, 2}, {2, 2}}}, {2, {{1, 2}, {1, 2}, {2, 2}}},
        {3, {{6, 0}}},          {3, {{2, 0}, {5, 0}}},         {3, {{3, 0}, {4, 0}}},
        {3, {{1, 2}, {5, 2}}},  {3, {{2, 2}, {4, 2}}},         {4, {{8, 2}}},
    };
    return r == 3 ? r3 : r4;
}

std::string insertions_str(const std::vector<RSpinInsertion>& ins) {
    std::ostringstream out;
    for (size_t i = 0; i < ins.size(); ++i) {
        if (i) out << ' ';
        out << ins[i].first << ',' << ins[i].second;
    }
    return out.str();
}

// --------------------------------------------------------------------------
// Verification suites (exit 0 iff every exact equality holds).
// --------------------------------------------------------------------------

bool suite_dvv_vs_npoint(long bound) {
    for (long g = 0; 3 * g - 3 + 1 <= bound; ++g) {
        for (long n = 1; 3 * g - 3 + n <= bound; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            long dim = 3 * g - 3 + n;
            if (dim < 0) continue;
            bool ok = true;
            std::vector<long> cur;
            sorted_tuples(n, dim, dim, cur, [&](const std::vector<long>& d) {
                Rational a = psi_correlator(g, d);
                if (a != npoint_coefficient(g, d)) ok = false;
                bool positive = true;
                for (long x : d)
                    if (x < 1) positive = false;
                if (positive && a != effective_recursion(g, d)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

bool suite_hodge_closed_forms() {
    for (long g = 1; g <= 4; ++g) {
        for (long n = 1; n <= 2; ++n) {
            bool ok = true;
            std::vector<long> cur;
            sorted_tuples(n, 2 * g - 3 + n, 2 * g - 3 + n, cur, [&](const std::vector<long>& d) {
                HodgeIntegrand w;
                w.genus = g;
                w.psi = d;
                w.lambda = {g};
                if (hodge_integral(w) != closed_lg(g, d)) ok = false;
            });
            if (!ok) return false;
            cur.clear();
            if (g < 2) continue;
            sorted_tuples(n, g - 2 + n, g - 2 + n, cur, [&](const std::vector<long>& d) {
                if (d.back() < 1) return;
                HodgeIntegrand w;
                w.genus = g;
                w.psi = d;
                w.lambda = {g, g - 1};
                if (hodge_integral(w) != closed_l2g(g, d)) ok = false;
            });
            if (!ok) return false;
        }
    }
    for (long g = 2; g <= 3; ++g) {
        HodgeIntegrand w;
        w.genus = g;
        w.lambda = {g - 1, g - 1, g - 1};
        if (hodge_integral(w) != closed_l3g(g)) return false;
    }
    return closed_l3g(2) == rat(1, 2880);
}

bool suite_wp_routes() {
    for (long l = 1; l <= 6; ++l) {
        Integer pw = 1;
        for (long i = 0; i < 2 * l; ++i) pw *= 2;
        Rational expect = (pw - 2) * bernoulli(2 * l) / Rational(double_factorial(2 * l - 1));
        if (l % 2 == 0) expect = -expect;
        if (alpha(MultiIndex::delta(1, l)) != expect) return false;
        if (alpha(MultiIndex::delta(l)) != rat(Integer(1), double_factorial(2 * l + 1)))
            return false;
    }
    for (long g = 0; g <= 2; ++g) {
        for (long n = 1; n <= 2; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            for (long w = 0; w <= 2; ++w) {
                long rest = 3 * g - 3 + n - w;
                if (rest < 0) continue;
                for (const auto& part : partitions_of(w)) {
                    MultiIndex b;
                    for (long p : part) b.set(p, b.at(p) + 1);
                    std::vector<long> cur;
                    bool ok = true;
                    sorted_tuples(n, rest, rest, cur, [&](const std::vector<long>& d) {
                        HodgeIntegrand h;
                        h.genus = g;
                        h.psi = d;
                        h.kappa = b;
                        if (wp_mixed(g, b, d) != hodge_integral(h)) ok = false;
                    });
                    if (!ok) return false;
                    std::vector<long> zeros(n, 0);
                    if (w == 3 * g - 3 + n && wp_volume(g, n, b) != wp_mixed(g, b, zeros))
                        return false;
                }
            }
        }
    }
    return true;
}

bool suite_faber_fa3() {
    for (long g = 2; g <= 4; ++g) {
        for (long n = 1; n <= 3; ++n) {
            bool ok = true;
            std::vector<long> cur;
            sorted_tuples(n, g + n - 2, g + n - 2, cur, [&](const std::vector<long>& d) {
                for (long x : d)
                    if (x < 1) return;
                if (!faber_intersection_check(g, d)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

bool suite_mock_garthwaite(long bound) {
    auto w = omega_series(bound);
    auto alt = omega_series_alt(bound);
    for (long n = 0; n <= bound; ++n) {
        if (w[n] != alt[n]) return false;
        if (garthwaite_omega(n, 25) != w[n]) return false;
    }
    return true;
}

bool suite_rspin_tables() {
    for (long r : {3L, 4L}) {
        for (const auto& [g, ins] : rspin_catalog(r)) {
            if (g > 2) continue; // quick spot checks; full tables live in the test suite
            Rational v = rspin_correlator(r, g, ins);
            if (v == 0) return false;
        }
    }
    if (rspin_correlator(3, 1, {{1, 0}}) != rat(1, 12)) return false;
    if (rspin_correlator(4, 1, {{1, 0}}) != rat(1, 8)) return false;
    if (rspin_correlator(3, 1, {{0, 1}, {0, 1}, {2, 1}}) != rat(1, 36)) return false;
    if (rspin_correlator(3, 2, {{2, 1}, {2, 1}}) != rat(17, 4320)) return false;
    if (rspin_correlator(4, 2, {{2, 1}, {2, 1}}) != rat(11, 960)) return false;
    for (long g = 0; g <= 2; ++g) {
        for (long s = std::max(1L, 3 - 2 * g); 3 * g - 3 + s <= 6; ++s) {
            long dim = 3 * g - 3 + s;
            bool ok = true;
            std::vector<long> cur;
            sorted_tuples(s, dim, dim, cur, [&](const std::vector<long>& d) {
                std::vector<RSpinInsertion> ins;
                for (long x : d) ins.push_back({x, 0});
                if (rspin_correlator(2, g, ins) != psi_correlator(g, d)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection numbers on moduli spaces of curves"};
    app.require_subcommand(1);

    Options opt;
    opt.cache_path = CacheStore::default_path();
    app.add_option("--cache", opt.cache_path, "Path of the persistent memo store");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "records"}));
    app.add_option("--route", opt.route, "Algorithm selector for psi")
        ->check(CLI::IsMember({"dvv", "effective", "npoint"}));
    app.add_option("--bound", opt.bound, "Degree bound for verification suites");

    int exit_code = kExitOk;

    // psi ------------------------------------------------------------------
    auto* psi = app.add_subcommand("psi", "Descendent integral <tau_{d_1}...tau_{d_n}>_g");
    long psi_g = 0;
    std::string psi_d;
    psi->add_option("--g", psi_g, "Genus")->required();
    psi->add_option("--d", psi_d, "Comma-separated indices")->required();
    psi->callback([&] {
        std::vector<long> d = parse_longs(psi_d);
        std::string key = opt.route + ";" + CorrelatorKey(psi_g, d).str();
        std::string v = cached(opt, "psi", key, [&] {
            if (opt.route == "effective") {
                bool positive = !d.empty();
                for (long x : d)
                    if (x < 1) positive = false;
                return rat_str(positive ? effective_recursion(psi_g, d) : psi_correlator(psi_g, d));
            }
            if (opt.route == "npoint") return rat_str(npoint_coefficient(psi_g, d));
            return rat_str(psi_correlator(psi_g, d));
        });
        print_scalar(opt, "psi", v);
    });

    // npoint ---------------------------------------------------------------
    auto* np = app.add_subcommand("npoint", "n-point generating polynomial");
    long np_g = 0, np_n = 1;
    bool np_plain = false;
    np->add_option("--g", np_g, "Genus")->required();
    np->add_option("--n", np_n, "Number of points")->required();
    np->add_flag("--plain", np_plain, "Print the unnormalized polynomial");
    np->callback([&] {
        if (np_g > 12 || np_n > 8) {
            std::cerr << "npoint: requested size exceeds supported limits\n";
            exit_code = kExitLimit;
            return;
        }
        SymPoly p = np_plain ? npoint_F(np_g, np_n) : npoint_G(np_g, np_n);
        std::cout << p.str() << "\n";
    });

    // hodge ----------------------------------------------------------------
    auto* ho = app.add_subcommand("hodge", "Mixed psi/kappa/lambda/ch integral");
    long ho_g = 0;
    std::string ho_d, ho_kappa, ho_lambda, ho_ch;
    ho->add_option("--g", ho_g, "Genus")->required();
    ho->add_option("--d", ho_d, "psi exponents (comma separated)");
    ho->add_option("--kappa", ho_kappa, "kappa multi-index, e.g. 1:2,2:1");
    ho->add_option("--lambda", ho_lambda, "lambda indices (comma separated)");
    ho->add_option("--ch", ho_ch, "Chern character degrees (comma separated)");
    ho->callback([&] {
        HodgeIntegrand w;
        w.genus = ho_g;
        w.psi = parse_longs(ho_d);
        w.kappa = parse_multiindex(ho_kappa);
        w.lambda = parse_longs(ho_lambda);
        w.ch = parse_longs(ho_ch);
        std::ostringstream key;
        key << ho_g << ";" << ho_d << ";" << ho_kappa << ";" << ho_lambda << ";" << ho_ch;
        std::string v =
            cached(opt, "hodge", key.str(), [&] { return rat_str(hodge_integral(w)); });
        print_scalar(opt, "hodge", v);
    });

    // wp -------------------------------------------------------------------
    auto* wp = app.add_subcommand("wp", "Higher Weil-Petersson volumes");
    long wp_g = 0, wp_n = -1;
    std::string wp_b, wp_d;
    wp->add_option("--g", wp_g, "Genus")->required();
    wp->add_option("--b", wp_b, "kappa multi-index, e.g. 1:3");
    wp->add_option("--n", wp_n, "Number of plain marked points (volume mode)");
    wp->add_option("--d", wp_d, "psi exponents (mixed correlator mode)");
    wp->callback([&] {
        MultiIndex b = parse_multiindex(wp_b);
        std::ostringstream key;
        key << wp_g << ";" << wp_b << ";" << wp_n << ";" << wp_d;
        std::string v = cached(opt, "wp", key.str(), [&] {
            if (!wp_d.empty()) return rat_str(wp_mixed(wp_g, b, parse_longs(wp_d)));
            if (wp_n == 0) return rat_str(wp_volume_closed(wp_g, b));
            if (wp_n > 0) return rat_str(wp_volume(wp_g, wp_n, b));
            return rat_str(wp_volume_closed(wp_g, b));
        });
        print_scalar(opt, "wp", v);
    });

    // faber-rank -----------------------------------------------------------
    auto* fr = app.add_subcommand("faber-rank", "Rank profile of the pairing matrices");
    long fr_g = 0;
    fr->add_option("--g", fr_g, "Genus")->required();
    fr->callback([&] {
        if (fr_g > 30) {
            std::cerr << "faber-rank: genus beyond supported computational range\n";
            exit_code = kExitLimit;
            return;
        }
        RankProfile p = rank_profile(fr_g);
        std::ostringstream cells;
        for (size_t k = 0; k < p.ranks.size(); ++k) {
            if (k) cells << ',';
            cells << p.ranks[k];
        }
        print_row(opt, fr_g, cells.str());
        if (opt.format == "text") std::cout << "total: " << p.total << "\n";
    });

    // mocktheta ------------------------------------------------------------
    auto* mt = app.add_subcommand("mocktheta", "Mock theta series coefficients");
    long mt_n = 0, mt_kmax = 25;
    bool mt_bessel = false;
    mt->add_option("--n", mt_n, "Coefficient index")->required();
    mt->add_flag("--bessel", mt_bessel, "Evaluate through the exact Bessel series");
    mt->add_option("--kmax", mt_kmax, "Bessel series truncation");
    mt->callback([&] {
        if (mt_n > 5000) {
            std::cerr << "mocktheta: index beyond supported range\n";
            exit_code = kExitLimit;
            return;
        }
        Integer v = mt_bessel ? garthwaite_omega(mt_n, mt_kmax) : omega_series(mt_n)[mt_n];
        print_scalar(opt, "mocktheta", v.get_str());
    });

    // rspin ----------------------------------------------------------------
    auto* rs = app.add_subcommand("rspin", "Correlators of the r-th root theories");
    long rs_r = 2, rs_g = 0;
    std::string rs_ins;
    rs->add_option("--r", rs_r, "Root order (2, 3 or 4)")->required();
    rs->add_option("--g", rs_g, "Genus")->required();
    rs->add_option("--ins", rs_ins, "Insertions as space-separated n,m pairs")->required();
    rs->callback([&] {
        if (rs_g > 6) {
            std::cerr << "rspin: genus beyond supported computational range\n";
            exit_code = kExitLimit;
            return;
        }
        auto ins = parse_insertions(rs_ins);
        std::ostringstream key;
        key << rs_r << ";" << rs_g << ";" << rs_ins;
        std::string v =
            cached(opt, "rspin", key.str(), [&] { return rat_str(rspin_correlator(rs_r, rs_g, ins)); });
        print_scalar(opt, "rspin", v);
    });

    // table ----------------------------------------------------------------
    auto* tb = app.add_subcommand("table", "Reference tables");
    std::string tb_which, tb_range = "2..12";
    tb->add_option("which", tb_which, "faber-rank | omega | rspin3 | rspin4")
        ->required()
        ->check(CLI::IsMember({"faber-rank", "omega", "rspin3", "rspin4"}));
    tb->add_option("--g", tb_range, "Genus or range, e.g. 2..12");
    tb->callback([&] {
        auto [lo, hi] = parse_range(tb_range);
        if (lo > hi || lo < 0) throw CLI::ValidationError("--g", "bad range");
        if (tb_which == "faber-rank") {
            if (hi > 30) {
                std::cerr << "table: genus beyond supported computational range\n";
                exit_code = kExitLimit;
                return;
            }
            for (long g = std::max(lo, 2L); g <= hi; ++g) {
                RankProfile p = rank_profile(g);
                std::ostringstream cells;
                for (size_t k = 0; k < p.ranks.size(); ++k) {
                    if (k) cells << ',';
                    cells << p.ranks[k];
                }
                print_row(opt, g, cells.str());
            }
        } else if (tb_which == "omega") {
            if (hi > 60) {
                std::cerr << "table: genus beyond supported range\n";
                exit_code = kExitLimit;
                return;
            }
            auto w = omega_series(std::max(0L, hi - 2));
            for (long g = std::max(lo, 2L); g <= hi; ++g)
                print_row(opt, g, w[g - 2].get_str());
        } else {
            long r = tb_which == "rspin3" ? 3 : 4;
            if (hi > 5) {
                std::cerr << "table: genus beyond supported computational range\n";
                exit_code = kExitLimit;
                return;
            }
            for (const auto& [g, ins] : rspin_catalog(r)) {
                if (g < lo || g > hi) continue;
                print_row(opt, g,
                          insertions_str(ins) + (opt.format == "csv" ? "," : " = ") +
                              rat_str(rspin_correlator(r, g, ins)));
            }
        }
    });

    // verify ---------------------------------------------------------------
    auto* vf = app.add_subcommand("verify", "Cross-check invariant suites");
    std::string vf_suite;
    vf->add_option("suite", vf_suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"dvv-vs-npoint", "hodge-closed-forms", "wp-routes", "faber-fa3",
                               "mock-garthwaite", "rspin-tables"}));
    vf->callback([&] {
        bool ok = false;
        if (vf_suite == "dvv-vs-npoint") ok = suite_dvv_vs_npoint(opt.bound);
        else if (vf_suite == "hodge-closed-forms") ok = suite_hodge_closed_forms();
        else if (vf_suite == "wp-routes") ok = suite_wp_routes();
        else if (vf_suite == "faber-fa3") ok = suite_faber_fa3();
        else if (vf_suite == "mock-garthwaite") ok = suite_mock_garthwaite(std::min(opt.bound * 10, 100L));
        else if (vf_suite == "rspin-tables") ok = suite_rspin_tables();
        std::cout << vf_suite << ": " << (ok ? "pass" : "fail") << "\n";
        if (!ok) exit_code = kExitVerify;
    });

    // Let the global flags (--cache/--format/--route/--bound) appear after the
    // subcommand name as well.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
