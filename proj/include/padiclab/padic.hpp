#ifndef PADICLAB_PADIC_HPP
#define PADICLAB_PADIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

/// Bit sequences are stored low-order-first throughout: bits[k] is the
/// coefficient of 2^k. Text I/O uses the same order ("100" means 1,0,0).
using BitSeq = std::vector<std::uint8_t>;

BitSeq bits_of_mpz(const mpz_class& v, int n);
mpz_class mpz_of_bits(const BitSeq& bits);
std::string bits_to_string(const BitSeq& bits);
BitSeq bits_from_string(const std::string& s);

/// b with a*b == 1 (mod 2^n). Rejects even a.
mpz_class mod_inverse_odd(const mpz_class& a, int n);

/// A 2-adic integer known modulo 2^precision. Arithmetic never claims
/// bits it does not know: binary operations carry the smaller precision,
/// halving drops one bit of precision.
class TruncatedPadic {
public:
    TruncatedPadic(const mpz_class& value, int precision) : precision_(precision) {
        if (precision < 1) throw std::invalid_argument("TruncatedPadic: precision must be >= 1");
        mpz_fdiv_r_2exp(residue_.get_mpz_t(), value.get_mpz_t(), precision);
    }

    static TruncatedPadic from_bits(const BitSeq& bits) {
        if (bits.empty()) throw std::invalid_argument("TruncatedPadic: empty bit sequence");
        return TruncatedPadic(mpz_of_bits(bits), static_cast<int>(bits.size()));
    }

    int precision() const { return precision_; }
    const mpz_class& residue() const { return residue_; }

    int bit(int k) const { return mpz_tstbit(residue_.get_mpz_t(), k) ? 1 : 0; }
    BitSeq bits() const { return bits_of_mpz(residue_, precision_); }
    int parity() const { return bit(0); }

    /// Drops the low bit: x -> x/2 on evens, (x-1)/2 on odds.
    TruncatedPadic shifted() const {
        if (precision_ < 2) throw std::invalid_argument("TruncatedPadic: precision exhausted");
        return TruncatedPadic(residue_ >> 1, precision_ - 1);
    }

    std::string to_string() const { return bits_to_string(bits()); }

    friend TruncatedPadic operator+(const TruncatedPadic& a, const TruncatedPadic& b) {
        return TruncatedPadic(a.residue_ + b.residue_, std::min(a.precision_, b.precision_));
    }
    friend TruncatedPadic operator-(const TruncatedPadic& a, const TruncatedPadic& b) {
        return TruncatedPadic(a.residue_ - b.residue_, std::min(a.precision_, b.precision_));
    }
    friend TruncatedPadic operator*(const TruncatedPadic& a, const TruncatedPadic& b) {
        return TruncatedPadic(a.residue_ * b.residue_, std::min(a.precision_, b.precision_));
    }

    /// Equal iff same precision and same residue.
    friend bool operator==(const TruncatedPadic& a, const TruncatedPadic& b) {
        return a.precision_ == b.precision_ && a.residue_ == b.residue_;
    }
    friend bool operator!=(const TruncatedPadic& a, const TruncatedPadic& b) { return !(a == b); }

private:
    mpz_class residue_;
    int precision_;
};

/// |x|_2 = 2^-l with l the lowest set bit, as the exponent l;
/// nullopt when no bit is set within the precision window.
std::optional<int> padic_norm_exponent(const TruncatedPadic& x);

/// An eventually periodic bit sequence: preperiod then period repeated
/// forever. Denotes A + 2^a * P / (1 - 2^l) where A, P are the values of
/// the preperiod (length a) and period (length l).
struct EventuallyPeriodicBits {
    BitSeq preperiod;
    BitSeq period;

    EventuallyPeriodicBits() = default;
    EventuallyPeriodicBits(BitSeq pre, BitSeq per)
        : preperiod(std::move(pre)), period(std::move(per)) {
        if (period.empty()) throw std::invalid_argument("EventuallyPeriodicBits: empty period");
    }

    int bit(std::size_t k) const {
        if (k < preperiod.size()) return preperiod[k];
        return period[(k - preperiod.size()) % period.size()];
    }

    BitSeq first_bits(int n) const {
        BitSeq out(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(bit(k));
        return out;
    }

    /// Minimal period, minimal preperiod (periodic prefix rolled into the
    /// period). Canonical forms are unique, so equality is testable.
    EventuallyPeriodicBits canonical() const;

    friend bool operator==(const EventuallyPeriodicBits& a, const EventuallyPeriodicBits& b) {
        return a.preperiod == b.preperiod && a.period == b.period;
    }

    std::string to_string() const {
        return bits_to_string(preperiod) + "(" + bits_to_string(period) + ")*";
    }
};

/// First n bits of num * den^-1 mod 2^n.
TruncatedPadic padic_from_rational(const OddRational& x, int n);

/// Exact value of an eventually periodic expansion, reduced.
OddRational rational_from_periodic(const EventuallyPeriodicBits& e);

/// The full (canonical) expansion of an odd-denominator rational, found by
/// iterating the digit-shift map until the exact state repeats.
EventuallyPeriodicBits periodic_bits_of(const OddRational& x);

}  // namespace padiclab

#endif
