#ifndef PADICLAB_RATIONAL_HPP
#define PADICLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace padiclab {

/// Exact rational p/q with q odd: the rationals that are 2-adic integers.
/// Stored canonically (gcd(p,q)=1, q>0). The parity of p/q is the parity
/// of p, since an odd q is invertible mod 2.
class OddRational {
public:
    OddRational() : v_(0) {}
    OddRational(long n) : v_(n) {}
    OddRational(const mpz_class& n) : v_(n) {}

    OddRational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("OddRational: zero denominator");
        v_.canonicalize();
        check_odd_den();
    }

    explicit OddRational(const mpq_class& q) : v_(q) {
        v_.canonicalize();
        check_odd_den();
    }

    /// Parses "p", "-p" or "p/q" (whitespace-free, optional leading +).
    static OddRational from_string(const std::string& s) {
        const std::string t = (!s.empty() && s.front() == '+') ? s.substr(1) : s;
        auto slash = t.find('/');
        if (slash == std::string::npos) return OddRational(mpz_class(t));
        return OddRational(mpz_class(t.substr(0, slash)), mpz_class(t.substr(slash + 1)));
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& value() const { return v_; }

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }

    /// 0 or 1: the low 2-adic digit.
    int parity() const { return mpz_odd_p(v_.get_num_mpz_t()) ? 1 : 0; }

    /// 2-adic valuation of the numerator (the denominator is a unit);
    /// nullopt for 0, whose norm is 0.
    std::optional<unsigned long> valuation() const {
        if (is_zero()) return std::nullopt;
        return mpz_scan1(v_.get_num_mpz_t(), 0);
    }

    std::string to_string() const { return v_.get_str(); }

    friend OddRational operator+(const OddRational& a, const OddRational& b) {
        return OddRational(mpq_class(a.v_ + b.v_));
    }
    friend OddRational operator-(const OddRational& a, const OddRational& b) {
        return OddRational(mpq_class(a.v_ - b.v_));
    }
    friend OddRational operator*(const OddRational& a, const OddRational& b) {
        return OddRational(mpq_class(a.v_ * b.v_));
    }
    /// Division is only closed when the divisor is a 2-adic unit (odd).
    friend OddRational operator/(const OddRational& a, const OddRational& b) {
        if (b.is_zero()) throw std::invalid_argument("OddRational: division by zero");
        return OddRational(mpq_class(a.v_ / b.v_));
    }
    OddRational operator-() const { return OddRational(mpq_class(-v_)); }

    friend bool operator==(const OddRational& a, const OddRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const OddRational& a, const OddRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const OddRational& a, const OddRational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const OddRational& a, const OddRational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const OddRational& a, const OddRational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const OddRational& a, const OddRational& b) { return a.v_ >= b.v_; }

private:
    void check_odd_den() {
        if (mpz_even_p(v_.get_den_mpz_t()))
            throw std::invalid_argument("OddRational: denominator must be odd, got " + v_.get_str());
    }

    mpq_class v_;
};

/// num / 2^exp with num odd or zero; the image of the integers under the
/// bit-reversal embedding, and the coordinate type of all plotted points.
struct DyadicRational {
    mpz_class num = 0;
    unsigned exp = 0;

    DyadicRational() = default;
    DyadicRational(mpz_class n, unsigned e) : num(std::move(n)), exp(e) { canonicalize(); }

    static DyadicRational from_mpq(const mpq_class& q) {
        mpz_class den = q.get_den();
        auto e = mpz_scan1(den.get_mpz_t(), 0);
        if ((mpz_class(1) << e) != den)
            throw std::invalid_argument("DyadicRational: denominator is not a power of two");
        return DyadicRational(q.get_num(), static_cast<unsigned>(e));
    }

    mpq_class to_mpq() const {
        mpq_class q(num, mpz_class(1) << exp);
        q.canonicalize();
        return q;
    }

    DyadicRational halved() const { return DyadicRational(num, exp + 1); }

    /// Exact decimal representation (every dyadic has a finite one).
    std::string to_decimal_string() const {
        if (exp == 0) return num.get_str();
        mpz_class scaled = num;
        for (unsigned i = 0; i < exp; ++i) scaled *= 5;  // num/2^e = num*5^e/10^e
        bool neg = scaled < 0;
        std::string digits = mpz_class(abs(scaled)).get_str();
        if (digits.size() <= exp) digits.insert(0, exp + 1 - digits.size(), '0');
        digits.insert(digits.size() - exp, ".");
        return (neg ? "-" : "") + digits;
    }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.num == b.num && a.exp == b.exp;
    }
    friend bool operator!=(const DyadicRational& a, const DyadicRational& b) { return !(a == b); }
    friend bool operator<(const DyadicRational& a, const DyadicRational& b) {
        return a.to_mpq() < b.to_mpq();
    }

private:
    void canonicalize() {
        if (num == 0) {
            exp = 0;
            return;
        }
        while (exp > 0 && mpz_even_p(num.get_mpz_t())) {
            num >>= 1;
            --exp;
        }
    }
};

}  // namespace padiclab

#endif
