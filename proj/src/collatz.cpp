#include "padiclab/collatz.hpp"

#include <map>

namespace padiclab {

OddRational t_step(const OddRational& x) {
    if (x.parity())
        return OddRational(mpq_class((3 * x.value() + 1) / 2));
    return OddRational(mpq_class(x.value() / 2));
}

OddRational u_step(const OddRational& x) {
    if (x.parity())
        return OddRational(mpq_class((x.value() + 1) / 2));
    return OddRational(mpq_class(3 * x.value() / 2));
}

OddRational shift_step(const OddRational& x) {
    return OddRational(mpq_class((x.value() - x.parity()) / 2));
}

TruncatedPadic t_step(const TruncatedPadic& x) {
    if (x.precision() < 2) throw std::invalid_argument("t_step: precision exhausted");
    if (x.parity()) return TruncatedPadic((3 * x.residue() + 1) >> 1, x.precision() - 1);
    return TruncatedPadic(x.residue() >> 1, x.precision() - 1);
}

TruncatedPadic shift_step(const TruncatedPadic& x) { return x.shifted(); }

ParityVector parity_vector(const OddRational& x, int j) {
    if (j < 1) throw std::invalid_argument("parity_vector: length must be >= 1");
    ParityVector out;
    out.reserve(static_cast<std::size_t>(j));
    OddRational cur = x;
    for (int k = 0; k < j; ++k) {
        out.push_back(static_cast<std::uint8_t>(cur.parity()));
        if (k + 1 < j) cur = t_step(cur);
    }
    return out;
}

ParityVector parity_vector(const TruncatedPadic& x, int j) {
    if (j < 1) throw std::invalid_argument("parity_vector: length must be >= 1");
    if (x.precision() < j)
        throw std::invalid_argument("parity_vector: precision " + std::to_string(x.precision()) +
                                    " too small for length " + std::to_string(j));
    ParityVector out;
    out.reserve(static_cast<std::size_t>(j));
    // Work on the raw residue: step k only needs the value mod 2^(n-k).
    mpz_class v = x.residue();
    for (int k = 0; k < j; ++k) {
        int s = mpz_odd_p(v.get_mpz_t()) ? 1 : 0;
        out.push_back(static_cast<std::uint8_t>(s));
        if (k + 1 < j) {
            if (s)
                v = (3 * v + 1) >> 1;
            else
                v >>= 1;
        }
    }
    return out;
}

OrbitReport detect_orbit_cycle(const OddRational& x, long budget) {
    if (budget < 1) throw std::invalid_argument("detect_orbit_cycle: budget must be >= 1");
    OrbitReport report;
    std::map<mpq_class, long> first_seen;
    OddRational cur = x;
    for (long i = 0; i <= budget; ++i) {
        auto it = first_seen.find(cur.value());
        if (it != first_seen.end()) {
            report.preperiod_length = it->second;
            report.cycle_length = i - it->second;
            return report;
        }
        if (i == budget) break;
        first_seen.emplace(cur.value(), i);
        report.iterates.push_back(cur);
        cur = t_step(cur);
    }
    report.budget_exhausted = true;
    return report;
}

}  // namespace padiclab
