#ifndef PADICLAB_CYCLE_SEARCH_HPP
#define PADICLAB_CYCLE_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

/// Sweep over reduced fractions p/q with odd |p|, q <= bound (both odd,
/// both signs of p), filtering on Q^pi(x) = x mod 2^modulus_bits for the
/// power-of-two periods pi <= max_period. The working modulus is
/// configurable: 2^40 is an empirical sufficiency, not a theorem.
struct SearchConfig {
    long bound = 999;
    int max_period = 16;
    int modulus_bits = 40;
    unsigned threads = 1;
};

struct CycleCandidate {
    OddRational seed;
    int period = 0;                          // smallest power of two that matched
    bool verified_exact = false;             // exact Q-orbit returned to the seed
    std::vector<OddRational> cycle_elements; // filled when verified
};

struct SearchReport {
    SearchConfig config;
    long candidates_tested = 0;
    std::vector<CycleCandidate> survivors;  // ordered by (|p|, q, sign)
    double wall_clock_ms = 0.0;
};

SearchReport search(const SearchConfig& cfg);

/// Exact golden checks of all known odd Q-cycles and the T-cycles their
/// elements fall into. Any failure here is fatal.
struct KnownCycleCheck {
    std::string description;
    bool passed;
};

std::vector<KnownCycleCheck> verify_known_cycles();
bool all_passed(const std::vector<KnownCycleCheck>& checks);

/// Odd residues fixed by Q_n, with their 2-adic distances to the two known
/// odd fixed points -1 and 1/3. A distance exponent of n means the residue
/// is indistinguishable from the fixed point at this precision.
struct FixedPointEntry {
    std::uint64_t residue = 0;
    int dist_exp_minus_one = 0;  // |x - (-1)| = 2^-e, capped at n
    int dist_exp_third = 0;      // |x - 1/3|
};

struct FixedPointReport {
    int level = 0;
    std::vector<FixedPointEntry> entries;
};

FixedPointReport fixed_point_locality(int n);

}  // namespace padiclab

#endif
