#include "padiclab/parity_transform.hpp"

namespace padiclab {

namespace {

// Shared evaluation loop: one modular inverse of 3, then a running power.
// select(s_k) is the coefficient of 2^k 3^(-sigma_k) in the sum.
template <typename Coeff>
mpz_class modular_series(const ParityVector& s, Coeff select) {
    const int j = static_cast<int>(s.size());
    if (j < 1) throw std::invalid_argument("parity transform: empty sequence");
    const mpz_class inv3 = mod_inverse_odd(3, j);
    mpz_class sum = 0;
    mpz_class pow = 1;  // 3^(-sigma_k) mod 2^j, updated as sigma grows
    mpz_class term;
    for (int k = 0; k < j; ++k) {
        if (s[static_cast<std::size_t>(k)]) pow = pow * inv3;
        int c = select(s[static_cast<std::size_t>(k)]);
        if (c != 0) {
            term = (c > 0 ? pow : -pow) << k;
            sum += term;
        }
        if ((k & 15) == 15) {  // keep operands small
            mpz_fdiv_r_2exp(sum.get_mpz_t(), sum.get_mpz_t(), j);
            mpz_fdiv_r_2exp(pow.get_mpz_t(), pow.get_mpz_t(), j);
        }
    }
    mpz_fdiv_r_2exp(sum.get_mpz_t(), sum.get_mpz_t(), j);
    return sum;
}

mpz_class reduce_mod_2exp(const mpz_class& v, int j) {
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), j);
    return r;
}

}  // namespace

CongruenceClass invert_v1(const ParityVector& s) {
    const int j = static_cast<int>(s.size());
    mpz_class sum = modular_series(s, [](int bit) { return bit; });
    return CongruenceClass{reduce_mod_2exp(-sum, j), j};
}

CongruenceClass invert_v2(const ParityVector& s) {
    const int j = static_cast<int>(s.size());
    mpz_class sum = modular_series(s, [](int bit) { return 1 - bit; });
    return CongruenceClass{reduce_mod_2exp(-1 - sum, j), j};
}

mpz_class invariant_sum(const ParityVector& s) {
    const int j = static_cast<int>(s.size());
    return reduce_mod_2exp(modular_series(s, [](int bit) { return bit ? -1 : 1; }), j);
}

TruncatedPadic inverse_2adic(const BitSeq& s, int n) {
    if (static_cast<int>(s.size()) < n)
        throw std::invalid_argument("inverse_2adic: need at least n bits of the sequence");
    ParityVector head(s.begin(), s.begin() + n);
    CongruenceClass v1 = invert_v1(head);
    // Both series formulations must agree modulo 2^n.
    if (invert_v2(head) != v1) throw std::logic_error("inverse_2adic: formulations disagree");
    return TruncatedPadic(v1.residue, n);
}

TruncatedPadic inverse_2adic(const EventuallyPeriodicBits& s, int n) {
    return inverse_2adic(s.first_bits(n), n);
}

OddRational qinv_exact_rational(const EventuallyPeriodicBits& s_in) {
    const EventuallyPeriodicBits s = s_in.canonical();
    const auto l = static_cast<unsigned long>(s.period.size());

    // Fixed point of the branch composition selected by the period:
    // x = (sum s_k 2^k 3^(sigma-sigma_k)) / (2^l - 3^sigma), with sigma the
    // number of odd steps per period. The numerator is an integer.
    unsigned long sigma = 0;
    for (unsigned long k = 0; k < l; ++k) sigma += s.period[k];
    std::vector<mpz_class> pow3(sigma + 1);
    pow3[0] = 1;
    for (unsigned long i = 1; i <= sigma; ++i) pow3[i] = pow3[i - 1] * 3;

    mpz_class numerator = 0;
    unsigned long sigma_k = 0;
    for (unsigned long k = 0; k < l; ++k) {
        sigma_k += s.period[k];
        if (s.period[k]) numerator += pow3[sigma - sigma_k] << k;
    }
    mpz_class denominator = (mpz_class(1) << l) - pow3[sigma];
    OddRational x(numerator, denominator);

    // Pull back through the preperiod: parity 1 forces x = (2y-1)/3,
    // parity 0 forces x = 2y.
    for (std::size_t i = s.preperiod.size(); i-- > 0;) {
        if (s.preperiod[i])
            x = OddRational(mpq_class((2 * x.value() - 1) / 3));
        else
            x = OddRational(mpq_class(2 * x.value()));
    }

    // Self-check: the forward parity sequence must reproduce the input.
    OddRational cur = x;
    const std::size_t steps = s.preperiod.size() + 2 * s.period.size();
    for (std::size_t k = 0; k < steps; ++k) {
        if (cur.parity() != s.bit(k))
            throw std::logic_error("qinv_exact_rational: self-check failed");
        cur = t_step(cur);
    }
    return x;
}

}  // namespace padiclab
