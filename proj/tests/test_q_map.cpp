#include <doctest.h>

#include <random>
#include <vector>

#include "padiclab/q_map.hpp"

using namespace padiclab;

TEST_CASE("q_mod on known residues") {
    CHECK(q_mod_u64(1, 4) == 5);
    CHECK(q_mod_u64(5, 5) == 17);
    CHECK(q_mod_u64(17, 5) == 5);
    CHECK(q_mod_u64(0, 17) == 0);
    CHECK(q_mod(mpz_class(1), 4) == 5);
}

TEST_CASE("q_mod_u64 agrees with the arbitrary-precision path") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        int n = 1 + static_cast<int>(rng() % 64);
        std::uint64_t x = rng() & (n == 64 ? ~0ull : (1ull << n) - 1);
        mpz_class big(static_cast<unsigned long>(x));
        CHECK(q_mod(big, n) == static_cast<unsigned long>(q_mod_u64(x, n)));
        CHECK(qinv_mod(big, n) == static_cast<unsigned long>(qinv_mod_u64(x, n)));
    }
}

TEST_CASE("q_exact on rationals whose orbits cycle") {
    auto q_of = [](const OddRational& x) {
        QResult r = q_exact(x);
        REQUIRE(r.exact());
        return *r.exact_value;
    };
    CHECK(q_of(OddRational(1, 5)) == OddRational(-1, 7));
    CHECK(q_of(OddRational(5, 7)) == OddRational(-1, 5));
    CHECK(q_of(OddRational(-1, 5)) == OddRational(5, 7));
    CHECK(q_of(OddRational(5)) == OddRational(-13, 3));
    CHECK(q_of(OddRational(17)) == OddRational(-401, 3));
    CHECK(q_of(OddRational(9)) == OddRational(-6377, 3));
    CHECK(q_of(OddRational(1)) == OddRational(-1, 3));
    CHECK(q_of(OddRational(-1)) == OddRational(-1));
    CHECK(q_of(OddRational(0)) == OddRational(0));
}

TEST_CASE("q_exact reports budget exhaustion with a truncation") {
    QResult r = q_exact(OddRational(27), 3, 8);
    CHECK(r.budget_exhausted);
    CHECK(!r.exact());
    REQUIRE(r.truncated_value.has_value());
    CHECK(r.truncated_value->precision() == 8);
    CHECK(r.truncated_value->residue() ==
          static_cast<unsigned long>(q_mod_u64(27, 8)));
}

TEST_CASE("q_iterate falls back to the modular route when the budget dies") {
    QResult r = q_iterate(OddRational(27), 2, 3, 16);
    CHECK(r.budget_exhausted);
    REQUIRE(r.truncated_value.has_value());
    CHECK(r.truncated_value->residue() ==
          static_cast<unsigned long>(q_mod_u64(q_mod_u64(27, 16), 16)));
}

TEST_CASE("qinv_mod on known residues and as a two-sided inverse") {
    CHECK(qinv_mod_u64(5, 4) == 1);
    CHECK(qinv_mod_u64(1, 6) == 21);  // -1/3 mod 64
    CHECK(qinv_mod_u64(0, 9) == 0);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        int n = 1 + static_cast<int>(rng() % 63);
        std::uint64_t x = rng() & ((1ull << n) - 1);
        CHECK(qinv_mod_u64(q_mod_u64(x, n), n) == x);
        CHECK(q_mod_u64(qinv_mod_u64(x, n), n) == x);
    }
}

TEST_CASE("q_inverse_exact inverts Q on rationals") {
    CHECK(q_inverse_exact(OddRational(1)) == OddRational(-1, 3));
    CHECK(q_inverse_exact(OddRational(-1, 3)) == OddRational(1));
    CHECK(q_inverse_exact(OddRational(1, 5)) == OddRational(13, 21));
    CHECK(q_inverse_exact(OddRational(2)) == OddRational(-2, 3));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        OddRational x(mpz_class(static_cast<long>(rng() % 201) - 100),
                      mpz_class(static_cast<long>(rng() % 50) * 2 + 1));
        QResult qr = q_exact(x);
        if (qr.exact()) CHECK(q_inverse_exact(*qr.exact_value) == x);
    }
}

TEST_CASE("the forward and backward iterates of 1/5") {
    auto val = [](QResult r) {
        REQUIRE(r.exact());
        return *r.exact_value;
    };
    const OddRational x(1, 5);
    CHECK(val(q_iterate(x, 1)) == OddRational(-1, 7));
    CHECK(val(q_iterate(x, 2)) == OddRational(17, 5));
    CHECK(val(q_iterate(x, 3)) == OddRational(1863, 31));
    CHECK(val(q_iterate(x, -1)) == OddRational(13, 21));
    CHECK(val(q_iterate(x, -2)) == OddRational(-1, 11));
    CHECK(val(q_iterate(x, -3)) == OddRational(373, 781));

    // 2-adic distances to the start: 2^-2, 2^-4, 2^-2, 2^-6 in both directions
    const std::vector<unsigned long> expected{2, 4, 2, 6};
    for (long j = 1; j <= 4; ++j) {
        CHECK((val(q_iterate(x, j)) - x).valuation() == expected[static_cast<std::size_t>(j - 1)]);
        CHECK((val(q_iterate(x, -j)) - x).valuation() ==
              expected[static_cast<std::size_t>(j - 1)]);
    }
}

TEST_CASE("solenoidal property: Q preserves congruence levels both ways") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 300; ++i) {
        int n = 2 + static_cast<int>(rng() % 30);
        int m = 1 + static_cast<int>(rng() % n);
        std::uint64_t x = rng() & ((1ull << n) - 1);
        std::uint64_t y = (x & ((1ull << m) - 1)) | (rng() << m & ((1ull << n) - 1));
        bool same_in = ((x ^ y) & ((1ull << m) - 1)) == 0;
        bool same_out = ((q_mod_u64(x, n) ^ q_mod_u64(y, n)) & ((1ull << m) - 1)) == 0;
        CHECK(same_in == same_out);
        CHECK((q_mod_u64(x, n) & 1) == (x & 1));  // parity preserved
    }
}

TEST_CASE("Q induces a permutation mod 2^n") {
    for (int n = 1; n <= 16; ++n) {
        std::vector<bool> hit(std::size_t(1) << n, false);
        for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
            std::uint64_t y = q_mod_u64(x, n);
            CHECK(!hit[y]);
            hit[y] = true;
        }
    }
}

TEST_CASE("Q conjugates T to the shift: T = Q^-1 . shift . Q") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 300; ++i) {
        int n = 2 + static_cast<int>(rng() % 29);
        std::uint64_t x = rng() & ((1ull << n) - 1);
        std::uint64_t qx = q_mod_u64(x, n);
        std::uint64_t shifted = qx >> 1;  // drop the low digit
        std::uint64_t lhs = qinv_mod_u64(shifted, n - 1);
        std::uint64_t t = (x & 1) ? (3 * x + 1) >> 1 : x >> 1;
        CHECK(lhs == (t & ((1ull << (n - 1)) - 1)));
    }
}

TEST_CASE("iteration congruences: Q^2 = id mod 2^4, Q^(2^k) = id mod 2^(k+4)") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t x = rng();
        CHECK(((q_mod_u64(q_mod_u64(x & 0xf, 4), 4)) == (x & 0xf)));
        for (int k = 2; k <= 6; ++k) {
            int n = k + 4;
            std::uint64_t mask = (1ull << n) - 1;
            std::uint64_t v = x & mask;
            for (long step = 0; step < (1L << k); ++step) v = q_mod_u64(v, n);
            CHECK(v == (x & mask));
        }
    }
}

TEST_CASE("functional equations hold exactly on sample rationals") {
    for (long v : {1L, 3L, 5L, 7L, 9L, 15L, 21L}) {
        FeqReport r = check_functional_equations(OddRational(v));
        CHECK(r.all_passed());
    }
    // Q^-1(2) = 2 Q^-1(1) = -2/3
    CHECK(q_inverse_exact(OddRational(2)) == OddRational(-2, 3));
    // x = 2 sits in the k = 2 guard class: Q(5) = 2 Q(2) - 3 = -13/3
    CHECK(q2x1_guard_level(OddRational(2), 16) == 2);
    QResult q5 = q_exact(OddRational(5));
    QResult q2 = q_exact(OddRational(2));
    REQUIRE(q5.exact());
    REQUIRE(q2.exact());
    CHECK(*q5.exact_value == OddRational(2) * *q2.exact_value - OddRational(3));
    CHECK(*q5.exact_value == OddRational(-13, 3));
    // Eq. for 3x+1 at x = 1: Q(4) = Q(1) - 1 = -4/3, also 4 Q(1) by doubling
    QResult q4 = q_exact(OddRational(4));
    REQUIRE(q4.exact());
    CHECK(*q4.exact_value == OddRational(-4, 3));
}

TEST_CASE("functional equations on random rationals and residues") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        long num = 2 * static_cast<long>(rng() % 100) + 1;
        long den = 2 * static_cast<long>(rng() % 25) + 1;
        if (rng() & 1) num = -num;
        FeqReport r = check_functional_equations(OddRational(num, den));
        CHECK(r.all_passed());
    }
    for (int i = 0; i < 200; ++i) {
        mpz_class x = static_cast<unsigned long>(rng());
        FeqReport r = check_functional_equations_mod(x, 24);
        CHECK(r.all_passed());
    }
}

TEST_CASE("guard class detection for the 2x+1 equation") {
    CHECK(q2x1_guard_level(mpz_class(2), 20) == 2);   // -2 mod 4
    CHECK(q2x1_guard_level(mpz_class(1), 20) == 3);   // -1 + 2 mod 8
    CHECK(q2x1_guard_level(mpz_class(11), 20) == 4);  // -5 mod 16
    CHECK(q2x1_guard_level(mpz_class(3), 20) == std::nullopt);
    // density: the guard classes with k <= 12 cover 2^11 - 1 of the 2^12
    // residues; the density of the full family is 1/4 + 1/8 + ... = 1/2
    long covered = 0;
    for (long x = 0; x < (1 << 12); ++x)
        if (q2x1_guard_level(mpz_class(x), 12)) ++covered;
    CHECK(covered == (1 << 11) - 1);
}
