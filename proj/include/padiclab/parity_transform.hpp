#ifndef PADICLAB_PARITY_TRANSFORM_HPP
#define PADICLAB_PARITY_TRANSFORM_HPP

#include <string>

#include "padiclab/collatz.hpp"
#include "padiclab/padic.hpp"

namespace padiclab {

/// The set {n : parity_vector(n, j) == S} is a single class mod 2^j.
struct CongruenceClass {
    mpz_class residue;   // least nonnegative representative
    int modulus_bits;    // modulus = 2^modulus_bits

    mpz_class modulus() const { return mpz_class(1) << modulus_bits; }
    std::string to_string() const { return residue.get_str() + " mod " + modulus().get_str(); }
    friend bool operator==(const CongruenceClass& a, const CongruenceClass& b) {
        return a.residue == b.residue && a.modulus_bits == b.modulus_bits;
    }
};

/// residue = -sum s_k 2^k 3^(-sigma_k)  (mod 2^j).
CongruenceClass invert_v1(const ParityVector& s);

/// residue = -1 - sum (1-s_k) 2^k 3^(-sigma_k)  (mod 2^j); agrees with invert_v1.
CongruenceClass invert_v2(const ParityVector& s);

/// sum (-1)^(s_k) 2^k 3^(-sigma_k) mod 2^j; identically -1 for every sequence.
mpz_class invariant_sum(const ParityVector& s);

/// First n bits of the 2-adic integer whose parity sequence is s.
TruncatedPadic inverse_2adic(const BitSeq& s, int n);
TruncatedPadic inverse_2adic(const EventuallyPeriodicBits& s, int n);

/// Exact rational x whose parity sequence is the given eventually periodic
/// sequence. The periodic part is the fixed point of the corresponding
/// branch composition, (sum s_k 2^k 3^(sigma-sigma_k)) / (2^l - 3^sigma);
/// preperiod bits are pulled back through exact T-predecessors. The result
/// is re-checked by forward iteration before returning.
OddRational qinv_exact_rational(const EventuallyPeriodicBits& s);

}  // namespace padiclab

#endif
