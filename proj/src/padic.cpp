#include "padiclab/padic.hpp"

#include <map>

namespace padiclab {

BitSeq bits_of_mpz(const mpz_class& v, int n) {
    BitSeq out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(mpz_tstbit(v.get_mpz_t(), k));
    return out;
}

mpz_class mpz_of_bits(const BitSeq& bits) {
    mpz_class v = 0;
    for (std::size_t k = bits.size(); k-- > 0;) {
        v <<= 1;
        if (bits[k]) v |= 1;
    }
    return v;
}

std::string bits_to_string(const BitSeq& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

BitSeq bits_from_string(const std::string& s) {
    BitSeq out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            out.push_back(0);
        else if (c == '1')
            out.push_back(1);
        else
            throw std::invalid_argument("bit string may contain only 0 and 1");
    }
    return out;
}

mpz_class mod_inverse_odd(const mpz_class& a, int n) {
    if (n < 1) throw std::invalid_argument("mod_inverse_odd: precision must be >= 1");
    if (mpz_even_p(a.get_mpz_t())) throw std::invalid_argument("mod_inverse_odd: even argument");
    mpz_class mod = mpz_class(1) << n;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return inv;
}

std::optional<int> padic_norm_exponent(const TruncatedPadic& x) {
    if (x.residue() == 0) return std::nullopt;
    return static_cast<int>(mpz_scan1(x.residue().get_mpz_t(), 0));
}

EventuallyPeriodicBits EventuallyPeriodicBits::canonical() const {
    // Shrink the period to its primitive length.
    BitSeq per = period;
    for (std::size_t d = 1; d <= per.size() / 2; ++d) {
        if (per.size() % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < per.size() && ok; ++i) ok = per[i] == per[i % d];
        if (ok) {
            per.resize(d);
            break;
        }
    }
    // Roll any periodic tail of the preperiod into the period.
    BitSeq pre = preperiod;
    while (!pre.empty() && pre.back() == per.back()) {
        per.pop_back();
        per.insert(per.begin(), pre.back());
        pre.pop_back();
    }
    return EventuallyPeriodicBits(std::move(pre), std::move(per));
}

TruncatedPadic padic_from_rational(const OddRational& x, int n) {
    mpz_class r = x.num() * mod_inverse_odd(x.den(), n);
    return TruncatedPadic(r, n);
}

OddRational rational_from_periodic(const EventuallyPeriodicBits& e) {
    const auto a = static_cast<unsigned long>(e.preperiod.size());
    const auto l = static_cast<unsigned long>(e.period.size());
    mpz_class pre_value = mpz_of_bits(e.preperiod);
    mpz_class per_value = mpz_of_bits(e.period);
    mpz_class den = 1 - (mpz_class(1) << l);
    mpq_class v = pre_value + mpq_class(per_value << a, den);
    v.canonicalize();
    return OddRational(v);
}

EventuallyPeriodicBits periodic_bits_of(const OddRational& x) {
    // The digit-shift orbit of p/q has finitely many states, so walking it
    // with a first-seen index yields the minimal preperiod and period.
    std::map<mpq_class, std::size_t> seen;
    BitSeq digits;
    OddRational cur = x;
    while (true) {
        auto it = seen.find(cur.value());
        if (it != seen.end()) {
            std::size_t start = it->second;
            BitSeq pre(digits.begin(), digits.begin() + static_cast<long>(start));
            BitSeq per(digits.begin() + static_cast<long>(start), digits.end());
            return EventuallyPeriodicBits(std::move(pre), std::move(per)).canonical();
        }
        seen.emplace(cur.value(), digits.size());
        int d = cur.parity();
        digits.push_back(static_cast<std::uint8_t>(d));
        cur = OddRational(mpq_class((cur.value() - d) / 2));
    }
}

}  // namespace padiclab
