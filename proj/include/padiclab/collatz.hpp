#ifndef PADICLAB_COLLATZ_HPP
#define PADICLAB_COLLATZ_HPP

#include <optional>
#include <vector>

#include "padiclab/padic.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

/// Parities of x, T(x), ..., T^(j-1)(x), low index first.
using ParityVector = BitSeq;

/// T(x) = (3x+1)/2 on odds, x/2 on evens. Exact; the denominator stays odd.
OddRational t_step(const OddRational& x);

/// U(x) = (x+1)/2 on odds, 3x/2 on evens; conjugate to T by U(x+1) = T(x)+1.
OddRational u_step(const OddRational& x);

/// Shift map: (x-1)/2 on odds, x/2 on evens (drops the low 2-adic digit).
OddRational shift_step(const OddRational& x);

/// T on a truncated value: one step costs one bit of precision.
TruncatedPadic t_step(const TruncatedPadic& x);
TruncatedPadic shift_step(const TruncatedPadic& x);

ParityVector parity_vector(const OddRational& x, int j);

/// Requires precision >= j: a length-j parity vector is exactly the
/// information in x mod 2^j.
ParityVector parity_vector(const TruncatedPadic& x, int j);

/// The T-orbit of x up to the first exact repeat (or until the budget runs
/// out, which is a reported outcome, not an error: termination for every
/// rational is an open conjecture).
struct OrbitReport {
    std::vector<OddRational> iterates;
    long preperiod_length = 0;
    std::optional<long> cycle_length;
    bool budget_exhausted = false;

    bool cycled() const { return cycle_length.has_value(); }
};

OrbitReport detect_orbit_cycle(const OddRational& x, long budget = 100000);

}  // namespace padiclab

#endif
