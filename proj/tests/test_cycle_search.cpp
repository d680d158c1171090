#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "padiclab/cycle_search.hpp"
#include "padiclab/collatz.hpp"
#include "padiclab/padic.hpp"

using namespace padiclab;

namespace {

std::set<std::string> seeds(const SearchReport& r) {
    std::set<std::string> out;
    for (const auto& c : r.survivors) out.insert(c.seed.to_string());
    return out;
}

}  // namespace

TEST_CASE("search with bound 1 finds the integer cycle points") {
    SearchConfig cfg;
    cfg.bound = 1;
    SearchReport r = search(cfg);
    CHECK(seeds(r) == std::set<std::string>{"1", "-1"});
    for (const auto& c : r.survivors) CHECK(c.verified_exact);
}

TEST_CASE("search with bound 7 finds all six known odd cycle rationals") {
    SearchConfig cfg;
    cfg.bound = 7;
    SearchReport r = search(cfg);
    CHECK(seeds(r) ==
          std::set<std::string>{"-1", "1/3", "-1/3", "1", "-1/5", "5/7"});
    for (const auto& c : r.survivors) {
        CHECK(c.verified_exact);
        CHECK(std::has_single_bit(static_cast<unsigned>(c.period)));
        if (c.seed == OddRational(-1) || c.seed == OddRational(1, 3))
            CHECK(c.period == 1);
        else
            CHECK(c.period == 2);
    }
    // deterministic order: by |p|, then q, positive sign first
    REQUIRE(r.survivors.size() == 6);
    CHECK(r.survivors[0].seed == OddRational(1));
    CHECK(r.survivors[1].seed == OddRational(-1));
    CHECK(r.survivors[2].seed == OddRational(1, 3));
    CHECK(r.survivors[3].seed == OddRational(-1, 3));
    CHECK(r.survivors[4].seed == OddRational(-1, 5));
    CHECK(r.survivors[5].seed == OddRational(5, 7));
}

TEST_CASE("search results do not depend on the thread partition") {
    SearchConfig cfg;
    cfg.bound = 25;
    SearchReport serial = search(cfg);
    cfg.threads = 4;
    SearchReport parallel = search(cfg);
    REQUIRE(serial.survivors.size() == parallel.survivors.size());
    for (std::size_t i = 0; i < serial.survivors.size(); ++i)
        CHECK(serial.survivors[i].seed == parallel.survivors[i].seed);
    CHECK(serial.candidates_tested == parallel.candidates_tested);
}

TEST_CASE("the modular filter never loses a planted exact cycle") {
    // soundness: an exact cycle survives any modulus and period cap >= its own
    for (int w : {8, 16, 40, 63}) {
        SearchConfig cfg;
        cfg.bound = 7;
        cfg.modulus_bits = w;
        CHECK(seeds(search(cfg)).size() >= 6);
    }
}

TEST_CASE("verify_known_cycles is all green") {
    auto checks = verify_known_cycles();
    CHECK(checks.size() == 12);
    for (const auto& c : checks) {
        INFO(c.description);
        CHECK(c.passed);
    }
    CHECK(all_passed(checks));
}

TEST_CASE("fixed points of Q_n cluster around -1 and 1/3") {
    FixedPointReport r1 = fixed_point_locality(1);
    REQUIRE(r1.entries.size() == 1);
    CHECK(r1.entries[0].residue == 1);

    FixedPointReport r4 = fixed_point_locality(4);
    std::set<std::uint64_t> res;
    for (const auto& e : r4.entries) res.insert(e.residue);
    CHECK(res == std::set<std::uint64_t>{3, 7, 11, 15});
    for (const auto& e : r4.entries) {
        if (e.residue == 15) CHECK(e.dist_exp_minus_one == 4);  // = -1 mod 16
        if (e.residue == 11) CHECK(e.dist_exp_third == 4);      // = 1/3 mod 16
    }

    // at any level, the residues of -1 and 1/3 are fixed, and every fixed
    // residue agrees with one of them modulo 16 (for n >= 6)
    for (int n : {6, 8, 10, 12}) {
        FixedPointReport r = fixed_point_locality(n);
        const std::uint64_t mod = std::uint64_t(1) << n;
        std::set<std::uint64_t> residues;
        for (const auto& e : r.entries) residues.insert(e.residue);
        std::uint64_t third = static_cast<std::uint64_t>(
            mpz_get_ui(mod_inverse_odd(3, n).get_mpz_t()));
        CHECK(residues.count(mod - 1) == 1);
        CHECK(residues.count(third) == 1);
        for (const auto& e : r.entries)
            CHECK(std::max(e.dist_exp_minus_one, e.dist_exp_third) >= 4);
    }
    // frozen exhaustive scan at level 8, cross-checked against the exact
    // rational orbit path in the assertions below
    FixedPointReport r8 = fixed_point_locality(8);
    std::set<std::uint64_t> res8;
    for (const auto& e : r8.entries) res8.insert(e.residue);
    CHECK(res8 == std::set<std::uint64_t>{15, 43, 63, 79, 107, 111, 127, 143, 171, 191, 207,
                                          235, 239, 255});
    for (const auto& e : r8.entries) {
        ParityVector s = parity_vector(OddRational(mpz_class(e.residue)), 8);
        CHECK(mpz_of_bits(s) == e.residue);
    }
}
