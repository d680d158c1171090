#include "padiclab/cycle_search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "padiclab/collatz.hpp"
#include "padiclab/q_map.hpp"

namespace padiclab {

namespace {

// One Q_w evaluation with a scratch residue, mask = 2^w - 1 (w <= 63).
inline std::uint64_t q_step_masked(std::uint64_t x, int w, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (int k = 0; k < w; ++k) {
        std::uint64_t s = x & 1;
        out |= s << k;
        x = s ? (3 * x + 1) >> 1 : x >> 1;
    }
    return out & mask;
}

struct RawHit {
    long p;  // signed numerator
    long q;
    int period;
};

void sweep_range(long q_lo, long q_hi, const SearchConfig& cfg, std::vector<RawHit>& hits,
                 long& tested) {
    const int w = cfg.modulus_bits;
    const std::uint64_t mask = (std::uint64_t(1) << w) - 1;
    for (long q = q_lo; q < q_hi; q += 2) {
        // inverse of q mod 2^w by Newton lifting
        std::uint64_t qinv = 1;
        for (int i = 0; i < 6; ++i) qinv *= 2 - static_cast<std::uint64_t>(q) * qinv;
        for (long p = 1; p <= cfg.bound; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            for (long sp : {p, -p}) {
                ++tested;
                std::uint64_t x0 =
                    (static_cast<std::uint64_t>(sp) * qinv) & mask;  // wraps correctly for sp < 0
                std::uint64_t x = x0;
                int matched = 0;
                for (int pi = 1; pi <= cfg.max_period && !matched; pi *= 2) {
                    for (int step = pi / 2 > 0 ? pi / 2 : 0; step < pi; ++step)
                        x = q_step_masked(x, w, mask);
                    if (x == x0) matched = pi;
                }
                if (matched) hits.push_back(RawHit{sp, q, matched});
            }
        }
    }
}

}  // namespace

SearchReport search(const SearchConfig& cfg) {
    if (cfg.bound < 1) throw std::invalid_argument("search: bound must be >= 1");
    if (cfg.max_period < 1 || !std::has_single_bit(static_cast<unsigned>(cfg.max_period)))
        throw std::invalid_argument("search: max_period must be a power of two");
    if (cfg.modulus_bits < 8 || cfg.modulus_bits > 63)
        throw std::invalid_argument("search: modulus_bits must be in [8, 63]");

    const auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.config = cfg;

    unsigned threads = std::max(1u, cfg.threads);
    std::vector<std::vector<RawHit>> hit_parts(threads);
    std::vector<long> tested_parts(threads, 0);
    if (threads == 1) {
        sweep_range(1, cfg.bound + 1, cfg, hit_parts[0], tested_parts[0]);
    } else {
        // Candidates are independent; partition the denominators.
        std::vector<std::thread> pool;
        long denoms = (cfg.bound + 1) / 2;
        long chunk = (denoms + threads - 1) / static_cast<long>(threads);
        for (unsigned t = 0; t < threads; ++t) {
            long lo = 1 + 2 * chunk * static_cast<long>(t);
            long hi = std::min<long>(cfg.bound + 1, lo + 2 * chunk);
            if (lo > cfg.bound) break;
            pool.emplace_back(sweep_range, lo, hi, std::cref(cfg), std::ref(hit_parts[t]),
                              std::ref(tested_parts[t]));
        }
        for (auto& th : pool) th.join();
    }

    std::vector<RawHit> hits;
    for (auto& part : hit_parts) hits.insert(hits.end(), part.begin(), part.end());
    report.candidates_tested = std::accumulate(tested_parts.begin(), tested_parts.end(), 0L);

    // Deterministic order regardless of the thread partition.
    std::sort(hits.begin(), hits.end(), [](const RawHit& a, const RawHit& b) {
        return std::tuple(std::abs(a.p), a.q, a.p < 0) <
               std::tuple(std::abs(b.p), b.q, b.p < 0);
    });

    // Promote survivors to exact verification.
    for (const auto& h : hits) {
        CycleCandidate c;
        c.seed = OddRational(mpz_class(h.p), mpz_class(h.q));
        c.period = h.period;
        OddRational cur = c.seed;
        bool ok = true;
        std::vector<OddRational> elems;
        for (int i = 0; i < h.period && ok; ++i) {
            elems.push_back(cur);
            QResult r = q_exact(cur);
            if (!r.exact()) {
                ok = false;
                break;
            }
            cur = *r.exact_value;
        }
        c.verified_exact = ok && cur == c.seed;
        if (c.verified_exact) c.cycle_elements = std::move(elems);
        report.survivors.push_back(std::move(c));
    }

    report.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<KnownCycleCheck> verify_known_cycles() {
    std::vector<KnownCycleCheck> out;
    auto expect_q = [&](const char* desc, const OddRational& x, const OddRational& want) {
        QResult r = q_exact(x);
        out.push_back({desc, r.exact() && *r.exact_value == want});
    };
    expect_q("Q(-1) = -1", OddRational(-1), OddRational(-1));
    expect_q("Q(1/3) = 1/3", OddRational(1, 3), OddRational(1, 3));
    expect_q("Q(-1/3) = 1", OddRational(-1, 3), OddRational(1));
    expect_q("Q(1) = -1/3", OddRational(1), OddRational(-1, 3));
    expect_q("Q(-1/5) = 5/7", OddRational(-1, 5), OddRational(5, 7));
    expect_q("Q(5/7) = -1/5", OddRational(5, 7), OddRational(-1, 5));

    auto expect_orbit = [&](const char* desc, const OddRational& x, long pre, long cyc) {
        OrbitReport r = detect_orbit_cycle(x);
        out.push_back({desc, r.cycled() && r.preperiod_length == pre && *r.cycle_length == cyc});
    };
    expect_orbit("T-orbit of -1 is the fixed point (-1)", OddRational(-1), 0, 1);
    expect_orbit("T-orbit of 1/3 reaches (1,2)", OddRational(1, 3), 1, 2);
    expect_orbit("T-orbit of -1/3 reaches (0)", OddRational(-1, 3), 1, 1);
    expect_orbit("T-orbit of 1 is (1,2)", OddRational(1), 0, 2);
    expect_orbit("T-orbit of -1/5 reaches (1/5,4/5,2/5)", OddRational(-1, 5), 1, 3);
    expect_orbit("T-orbit of 5/7 is (5/7,11/7,20/7,10/7)", OddRational(5, 7), 0, 4);
    return out;
}

bool all_passed(const std::vector<KnownCycleCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

FixedPointReport fixed_point_locality(int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("fixed_point_locality: need 1 <= n <= 30");
    FixedPointReport report;
    report.level = n;
    const std::uint64_t mod = std::uint64_t(1) << n;
    const std::uint64_t minus_one = mod - 1;
    const std::uint64_t third =
        static_cast<std::uint64_t>(mpz_get_ui(mod_inverse_odd(3, n).get_mpz_t()));
    auto dist_exp = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t d = (a - b) & (mod - 1);
        return d == 0 ? n : std::countr_zero(d);
    };
    for (std::uint64_t x = 1; x < mod; x += 2) {
        if (q_mod_u64(x, n) != x) continue;
        report.entries.push_back(
            FixedPointEntry{x, dist_exp(x, minus_one), dist_exp(x, third)});
    }
    return report;
}

}  // namespace padiclab
