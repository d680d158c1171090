// padiclab: exact tools for the 3x+1 map on the 2-adic integers.
//
// Subcommands reproduce every table and figure of the accompanying study:
// parity vectors, both inverse transforms, the parity-encoding automorphism
// Q, its permutation/ergodic structure, the rational Q-cycle search, and
// the plane embedding of the parity correspondence.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "padiclab/cycle_analysis.hpp"
#include "padiclab/cycle_search.hpp"
#include "padiclab/embedding.hpp"
#include "padiclab/parity_transform.hpp"
#include "padiclab/q_map.hpp"
#include "padiclab/render.hpp"

using namespace padiclab;

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("PADICLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty())
        std::cout << contents;
    else
        atomic_write_file(out_path, contents);
}

// Exact showcase parameters: the six known odd Q-cycle rationals plus the
// small integers whose points bracket them, sorted by abscissa on output.
const char* kShowcaseParams = "1,17,9,-7,5,-1/3,-3,3,5/7,-1/5,1/3,-5,7,-1";

std::vector<EmbeddedPoint> exact_points_sorted(const std::string& csv_params) {
    std::vector<EmbeddedPoint> pts;
    std::stringstream ss(csv_params);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) pts.push_back(embed_point(OddRational::from_string(tok)));
    std::sort(pts.begin(), pts.end(), [](const EmbeddedPoint& a, const EmbeddedPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.parameter < b.parameter;
    });
    return pts;
}

int run_verify(const std::string& suite);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact 2-adic laboratory for the 3x+1 parity correspondence.\n"
        "Bit strings are written low-order digit first: \"100\" is s0=1, s1=0, s2=0\n"
        "(the usual right-to-left 2-adic shorthand, read back to front)."};
    app.require_subcommand(1);
    app.fallthrough();  // allow -o after the subcommand
    std::string out_path;
    app.add_option("-o,--out", out_path, "Write output to a file (atomic temp+rename)")
        ->capture_default_str();

    // --- parity ---------------------------------------------------------
    auto* cmd_parity = app.add_subcommand("parity", "Parity vector of n or p/q under the 3x+1 map");
    std::string parity_arg;
    int parity_len = 8;
    cmd_parity->add_option("value", parity_arg, "Integer or rational p/q with q odd")->required();
    cmd_parity->add_option("--len", parity_len, "Vector length j >= 1")->capture_default_str();
    std::string parity_format = "text";
    cmd_parity->add_option("--format", parity_format, "text|json")->capture_default_str();

    // --- invert ---------------------------------------------------------
    auto* cmd_invert =
        app.add_subcommand("invert", "Congruence class mod 2^j with the given parity vector");
    std::string invert_bits, invert_formula = "v1";
    cmd_invert->add_option("bits", invert_bits, "Parity vector, low-order bit first")->required();
    cmd_invert->add_option("--formula", invert_formula, "v1|v2|both")->capture_default_str();

    // --- q ----------------------------------------------------------------
    auto* cmd_q = app.add_subcommand("q", "Apply the parity-encoding automorphism Q");
    std::string q_arg;
    bool q_inverse = false, q_exact_flag = false;
    long q_iters = 1;
    int q_precision = 64;
    cmd_q->add_option("value", q_arg, "Integer, rational p/q, or residue")->required();
    cmd_q->add_flag("--inverse", q_inverse, "Apply Q^-1 instead of Q");
    cmd_q->add_option("--iterations", q_iters, "Number of applications")->capture_default_str();
    cmd_q->add_option("--precision", q_precision, "Result precision in bits (residue mode)")
        ->capture_default_str();
    cmd_q->add_flag("--exact", q_exact_flag, "Exact rational result (orbit must cycle)");

    // --- ergodic ----------------------------------------------------------
    auto* cmd_ergodic =
        app.add_subcommand("ergodic", "Enumerate odd ergodic sets by 2-adic measure");
    int ergodic_max_k = 8, ergodic_cap = 18;
    bool ergodic_list = false;
    std::string ergodic_format = "text";
    cmd_ergodic->add_option("--max-k", ergodic_max_k, "Largest measure exponent k")
        ->capture_default_str();
    cmd_ergodic->add_option("--cap", ergodic_cap, "Permutation level cap")->capture_default_str();
    cmd_ergodic->add_flag("--list", ergodic_list, "List base cycles, not only the counts");
    cmd_ergodic->add_option("--format", ergodic_format, "text|json")->capture_default_str();

    // --- search -----------------------------------------------------------
    auto* cmd_search = app.add_subcommand("search", "Sweep rationals p/q for odd Q-cycles");
    SearchConfig scfg;
    scfg.threads = default_threads();
    std::string search_format = "text";
    cmd_search->add_option("--bound", scfg.bound, "Bound on |p|, q (odd coprime)")
        ->capture_default_str();
    cmd_search->add_option("--max-period", scfg.max_period, "Largest period tested (power of 2)")
        ->capture_default_str();
    cmd_search->add_option("--modulus-bits", scfg.modulus_bits, "Working modulus 2^w")
        ->capture_default_str();
    cmd_search->add_option("--threads", scfg.threads, "Worker threads (PADICLAB_THREADS)")
        ->capture_default_str();
    cmd_search->add_option("--format", search_format, "text|json")->capture_default_str();

    // --- embed ------------------------------------------------------------
    auto* cmd_embed = app.add_subcommand("embed", "Plane embedding of the parity correspondence");
    int embed_bits = 12;
    bool embed_boxes = false;
    std::string embed_format = "text", embed_squares, embed_params;
    cmd_embed->add_option("--bits", embed_bits, "Bit depth k: one point per n < 2^k")
        ->capture_default_str();
    cmd_embed->add_option("--format", embed_format, "csv|svg|json|text")->capture_default_str();
    cmd_embed->add_flag("--boxes", embed_boxes, "Draw the 2^k-square covering (svg)");
    cmd_embed->add_option("--squares", embed_squares,
                          "Emit enlarged diagonal squares for a k range, e.g. 2..7 (svg)");
    cmd_embed->add_option("--params", embed_params,
                          "Comma-separated rational parameters for exact points (json)");

    // --- fixed-points -------------------------------------------------------
    auto* cmd_fixed = app.add_subcommand(
        "fixed-points", "Odd residues fixed by Q_n and their distance to -1 and 1/3");
    int fixed_n = 8;
    std::string fixed_format = "text";
    cmd_fixed->add_option("--precision", fixed_n, "Level n")->capture_default_str();
    cmd_fixed->add_option("--format", fixed_format, "text|json")->capture_default_str();

    // --- verify -------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "Run the built-in consistency suites");
    std::string verify_suite = "all";
    cmd_verify->add_option("--suite", verify_suite, "all|feq|tables|invariants")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_parity) {
            OddRational x = OddRational::from_string(parity_arg);
            ParityVector v = parity_vector(x, parity_len);
            if (parity_format == "json")
                emit(out_path, "{\"value\":\"" + x.to_string() + "\",\"parity_vector\":\"" +
                                   bits_to_string(v) + "\"}\n");
            else
                emit(out_path, bits_to_string(v) + "\n");
        } else if (*cmd_invert) {
            ParityVector s = bits_from_string(invert_bits);
            if (invert_formula == "v1") {
                emit(out_path, invert_v1(s).to_string() + "\n");
            } else if (invert_formula == "v2") {
                emit(out_path, invert_v2(s).to_string() + "\n");
            } else if (invert_formula == "both") {
                CongruenceClass a = invert_v1(s), b = invert_v2(s);
                std::ostringstream os;
                os << "v1: " << a.to_string() << "\n"
                   << "v2: " << b.to_string() << "\n"
                   << (a == b ? "agree\n" : "DISAGREE\n");
                emit(out_path, os.str());
                if (a != b) return 1;
            } else {
                std::cerr << "unknown formula " << invert_formula << "\n";
                return 2;
            }
        } else if (*cmd_q) {
            OddRational x = OddRational::from_string(q_arg);
            long j = q_inverse ? -q_iters : q_iters;
            if (q_exact_flag) {
                QResult r = q_iterate(x, j);
                if (!r.exact()) {
                    emit(out_path, r.to_string() + "\n");
                    return 1;
                }
                emit(out_path, r.exact_value->to_string() + "\n");
            } else {
                mpz_class residue = padic_from_rational(x, q_precision).residue();
                mpz_class image = q_iterate_mod(residue, j, q_precision);
                emit(out_path,
                     image.get_str() + " mod 2^" + std::to_string(q_precision) + "\n");
            }
        } else if (*cmd_ergodic) {
            if (ergodic_cap >= 20)
                std::cerr << "building permutation tables to level " << ergodic_cap + 2
                          << "...\n";
            ErgodicEnumeration e = enumerate_ergodic_sets(ergodic_max_k, ergodic_cap);
            if (ergodic_format == "json") {
                emit(out_path, ergodic_json(e));
            } else {
                std::ostringstream os;
                MeasureSummary ms = measure_summary(e);
                os << "odd ergodic sets by measure 2^-k (level cap " << e.level_cap
                   << (e.indeterminate ? ", INCOMPLETE" : ", complete up to cap") << ")\n";
                for (std::size_t k = 1; k < e.counts.size(); ++k)
                    os << "  k=" << k << "  N=" << e.counts[k] << "\n";
                if (ergodic_list)
                    for (const auto& r : e.records) {
                        os << "  measure 1/2^" << r.measure_exponent << "  level " << r.base.level
                           << "  cycle (";
                        for (std::size_t i = 0; i < r.base.elements.size(); ++i)
                            os << (i ? "," : "") << r.base.elements[i];
                        os << ")\n";
                    }
                os << "odd-side measure total:  " << ms.odd_total.get_str() << " ~ "
                   << ms.odd_total.get_d() << "\n";
                os << "full-domain measure total: " << ms.full_total.get_str() << " ~ "
                   << ms.full_total.get_d() << "\n";
                emit(out_path, os.str());
            }
        } else if (*cmd_search) {
            if (scfg.bound >= 99)
                std::cerr << "sweeping odd coprime p/q up to " << scfg.bound << " with "
                          << scfg.threads << " thread(s)...\n";
            SearchReport r = search(scfg);
            std::cerr << "tested " << r.candidates_tested << " candidates in "
                      << r.wall_clock_ms << " ms\n";
            if (search_format == "json") {
                emit(out_path, search_json(r));
            } else {
                std::ostringstream os;
                os << "tested " << r.candidates_tested << " candidates, " << r.survivors.size()
                   << " survivors\n";
                for (const auto& c : r.survivors) {
                    os << "  " << c.seed.to_string() << "  period " << c.period
                       << (c.verified_exact ? "  exact" : "  UNVERIFIED") << "  cycle (";
                    for (std::size_t i = 0; i < c.cycle_elements.size(); ++i)
                        os << (i ? ", " : "") << c.cycle_elements[i].to_string();
                    os << ")\n";
                }
                emit(out_path, os.str());
            }
        } else if (*cmd_embed) {
            if (!embed_squares.empty()) {
                auto dots = embed_squares.find("..");
                if (dots == std::string::npos) {
                    std::cerr << "--squares expects a range like 2..7\n";
                    return 2;
                }
                int lo = std::stoi(embed_squares.substr(0, dots));
                int hi = std::stoi(embed_squares.substr(dots + 2));
                std::ostringstream os;
                write_squares_svg(os, lo, hi);
                emit(out_path, os.str());
            } else if (embed_format == "json") {
                emit(out_path, points_json(exact_points_sorted(
                                   embed_params.empty() ? kShowcaseParams : embed_params)));
            } else if (embed_format == "text") {
                auto pts = exact_points_sorted(embed_params.empty() ? kShowcaseParams
                                                                    : embed_params);
                std::ostringstream os;
                for (const auto& p : pts)
                    os << p.parameter.to_string() << "\tQ=" << p.q_of_parameter.to_string()
                       << "\tX=" << p.x.get_str() << "\tY=" << p.y.get_str() << "\n";
                emit(out_path, os.str());
            } else if (embed_format == "svg") {
                std::ostringstream os;
                if (embed_boxes)
                    write_boxes_svg(os, embed_bits);
                else
                    write_points_svg(os, embed_bits);
                emit(out_path, os.str());
            } else if (embed_format == "csv") {
                std::ostringstream os;
                write_points_csv(os, embed_bits);
                emit(out_path, os.str());
            } else {
                std::cerr << "unknown format " << embed_format << "\n";
                return 2;
            }
        } else if (*cmd_fixed) {
            FixedPointReport r = fixed_point_locality(fixed_n);
            if (fixed_format == "json") {
                emit(out_path, fixed_points_json(r));
            } else {
                std::ostringstream os;
                for (const auto& e : r.entries)
                    os << e.residue << "  |x+1| <= 2^-" << e.dist_exp_minus_one
                       << "  |x-1/3| <= 2^-" << e.dist_exp_third << "\n";
                emit(out_path, os.str());
            }
        } else if (*cmd_verify) {
            return run_verify(verify_suite);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

namespace {

int run_verify(const std::string& suite) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    if (suite == "feq" || suite == "all") {
        std::mt19937_64 rng(0xfe90);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            long num = static_cast<long>(rng() % 199) - 99;
            long den = static_cast<long>(rng() % 50) * 2 + 1;
            if (num == 0) num = 1;
            OddRational x{mpz_class(num), mpz_class(den)};
            FeqReport r = check_functional_equations(x);
            ok = r.all_passed();
        }
        check("functional equations on 200 random rationals", ok);
        bool okm = true;
        for (int i = 0; i < 500 && okm; ++i) {
            mpz_class x = static_cast<unsigned long>(rng() & 0xffffffff);
            okm = check_functional_equations_mod(x, 32).all_passed();
        }
        check("functional equations mod 2^32 on 500 residues", okm);
    }
    if (suite == "tables" || suite == "all") {
        check("known odd Q-cycles and their T-cycles", all_passed(verify_known_cycles()));
        {
            ErgodicEnumeration e = enumerate_ergodic_sets(8, 12);
            long small = 0;
            for (const auto& r : e.records)
                if (r.measure_exponent <= 6) ++small;
            bool cycles_ok =
                small == 5 && e.records.size() >= 5 && e.records[0].base.level == 5 &&
                e.records[0].base.elements == std::vector<std::uint64_t>{5, 17} &&
                e.records[1].base.elements == std::vector<std::uint64_t>{9, 29, 25, 13} &&
                e.records[2].base.elements == std::vector<std::uint64_t>{41, 61, 57, 45} &&
                e.records[3].base.elements == std::vector<std::uint64_t>{27, 251, 219, 59} &&
                e.records[4].base.elements == std::vector<std::uint64_t>{91, 187, 155, 123};
            check("the five ever-doubling base cycles up to measure 1/64", cycles_ok);
            check("ergodic counts N_4..N_8 = 3,0,2,10,11",
                  e.counts[4] == 3 && e.counts[5] == 0 && e.counts[6] == 2 &&
                      e.counts[7] == 10 && e.counts[8] == 11);
        }
        {
            static const char* rows[14][4] = {
                {"1", "-1/3", "1", "4/3"},         {"17", "-401/3", "17/16", "493/384"},
                {"9", "-6377/3", "9/8", "8941/6144"}, {"-7", "-5/7", "5/4", "10/7"},
                {"5", "-13/3", "5/4", "13/12"},    {"-1/3", "1", "4/3", "1"},
                {"-3", "-7", "3/2", "5/4"},        {"3", "-23/3", "3/2", "37/24"},
                {"5/7", "-1/5", "11/7", "8/5"},    {"-1/5", "5/7", "8/5", "11/7"},
                {"1/3", "1/3", "5/3", "5/3"},      {"-5", "-3/7", "7/4", "12/7"},
                {"7", "-1595/3", "7/4", "2797/1536"}, {"-1", "-1", "2", "2"},
            };
            auto pts = exact_points_sorted(kShowcaseParams);
            bool ok = pts.size() == 14;
            for (std::size_t i = 0; ok && i < 14; ++i)
                ok = pts[i].parameter == OddRational::from_string(rows[i][0]) &&
                     pts[i].q_of_parameter == OddRational::from_string(rows[i][1]) &&
                     pts[i].x == mpq_class(rows[i][2]) && pts[i].y == mpq_class(rows[i][3]);
            check("the 14 exact rational points in abscissa order", ok);
        }
    }
    if (suite == "invariants" || suite == "all") {
        std::mt19937_64 rng(0x1271);
        bool ok = true;
        for (int i = 0; i < 500 && ok; ++i) {
            int j = 1 + static_cast<int>(rng() % 48);
            ParityVector s(static_cast<std::size_t>(j));
            for (auto& b : s) b = static_cast<std::uint8_t>(rng() & 1);
            mpz_class target = (mpz_class(1) << j) - 1;
            ok = invariant_sum(s) == target && invert_v1(s) == invert_v2(s);
        }
        check("invariant congruence and v1/v2 agreement", ok);
        bool iso = true;
        for (int i = 0; i < 200 && iso; ++i) {
            int n = 4 + static_cast<int>(rng() % 28);
            std::uint64_t mask = (std::uint64_t(1) << n) - 1;
            std::uint64_t x = rng() & mask;
            iso = qinv_mod_u64(q_mod_u64(x, n), n) == x;
        }
        check("Q round trip mod 2^n", iso);
    }
    std::cout << (failures == 0 ? "ALL OK\n" : "FAILURES\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace
