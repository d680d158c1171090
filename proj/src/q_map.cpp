#include "padiclab/q_map.hpp"

namespace padiclab {

std::uint64_t q_mod_u64(std::uint64_t x, int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("q_mod_u64: need 1 <= n <= 64");
    std::uint64_t out = 0;
    for (int k = 0; k < n; ++k) {
        std::uint64_t s = x & 1;
        out |= s << k;
        x = s ? (3 * x + 1) >> 1 : x >> 1;
    }
    if (n < 64) out &= (std::uint64_t(1) << n) - 1;
    return out;
}

mpz_class q_mod(const mpz_class& x, int n) {
    if (n < 1) throw std::invalid_argument("q_mod: precision must be >= 1");
    if (n <= 64 && x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64)
        return mpz_class(static_cast<unsigned long>(
            q_mod_u64(mpz_get_ui(x.get_mpz_t()), n)));
    mpz_class v;
    mpz_fdiv_r_2exp(v.get_mpz_t(), x.get_mpz_t(), n);
    mpz_class out = 0;
    for (int k = 0; k < n; ++k) {
        int s = mpz_odd_p(v.get_mpz_t()) ? 1 : 0;
        if (s) {
            mpz_setbit(out.get_mpz_t(), k);
            v = (3 * v + 1) >> 1;
        } else {
            v >>= 1;
        }
    }
    mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), n);
    return out;
}

TruncatedPadic q(const TruncatedPadic& x) {
    return TruncatedPadic(q_mod(x.residue(), x.precision()), x.precision());
}

std::uint64_t qinv_mod_u64(std::uint64_t y, int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("qinv_mod_u64: need 1 <= n <= 64");
    // -sum s_k 2^k 3^(-sigma_k) with wrapping arithmetic mod 2^64.
    const std::uint64_t inv3 = 0xAAAAAAAAAAAAAAABull;  // 3 * inv3 == 1 mod 2^64
    std::uint64_t sum = 0, pow = 1;
    for (int k = 0; k < n; ++k) {
        if ((y >> k) & 1) {
            pow *= inv3;
            sum += pow << k;
        }
    }
    std::uint64_t out = ~sum + 1;
    if (n < 64) out &= (std::uint64_t(1) << n) - 1;
    return out;
}

mpz_class qinv_mod(const mpz_class& y, int n) {
    if (n < 1) throw std::invalid_argument("qinv_mod: precision must be >= 1");
    if (n <= 64 && y >= 0 && mpz_sizeinbase(y.get_mpz_t(), 2) <= 64)
        return mpz_class(static_cast<unsigned long>(
            qinv_mod_u64(mpz_get_ui(y.get_mpz_t()), n)));
    mpz_class v;
    mpz_fdiv_r_2exp(v.get_mpz_t(), y.get_mpz_t(), n);
    return invert_v1(bits_of_mpz(v, n)).residue;
}

TruncatedPadic q_inverse(const TruncatedPadic& y) {
    return TruncatedPadic(qinv_mod(y.residue(), y.precision()), y.precision());
}

QResult q_exact(const OddRational& x, long budget, int fallback_precision) {
    OrbitReport orbit = detect_orbit_cycle(x, budget);
    QResult r;
    if (orbit.cycled()) {
        const long pre = orbit.preperiod_length;
        const long cyc = *orbit.cycle_length;
        BitSeq preperiod(static_cast<std::size_t>(pre));
        BitSeq period(static_cast<std::size_t>(cyc));
        for (long i = 0; i < pre; ++i)
            preperiod[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(orbit.iterates[static_cast<std::size_t>(i)].parity());
        for (long i = 0; i < cyc; ++i)
            period[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
                orbit.iterates[static_cast<std::size_t>(pre + i)].parity());
        r.exact_value =
            rational_from_periodic(EventuallyPeriodicBits(preperiod, period).canonical());
        return r;
    }
    r.budget_exhausted = true;
    r.truncated_value = q(padic_from_rational(x, fallback_precision));
    return r;
}

OddRational q_inverse_exact(const OddRational& y) {
    return qinv_exact_rational(periodic_bits_of(y));
}

QResult q_iterate(const OddRational& x, long j, long budget, int fallback_precision) {
    QResult r;
    r.exact_value = x;
    if (j >= 0) {
        for (long i = 0; i < j; ++i) {
            r = q_exact(*r.exact_value, budget, fallback_precision);
            if (!r.exact()) {
                // The exact route is closed, but the modular iterate is not:
                // finish the remaining steps mod 2^fallback_precision.
                r.truncated_value = TruncatedPadic(
                    q_iterate_mod(r.truncated_value->residue(), j - i - 1, fallback_precision),
                    fallback_precision);
                return r;
            }
        }
    } else {
        for (long i = 0; i < -j; ++i) r.exact_value = q_inverse_exact(*r.exact_value);
    }
    return r;
}

mpz_class q_iterate_mod(const mpz_class& x, long j, int n) {
    mpz_class v;
    mpz_fdiv_r_2exp(v.get_mpz_t(), x.get_mpz_t(), n);
    for (long i = 0; i < (j >= 0 ? j : -j); ++i) v = j >= 0 ? q_mod(v, n) : qinv_mod(v, n);
    return v;
}

namespace {

// -1 - (-2)^(k-2), the center of the k-th guard class
mpz_class q2x1_guard_point(int k) {
    mpz_class pow = mpz_class(1) << (k - 2);
    if (k % 2 == 1) pow = -pow;
    return -1 - pow;
}

}  // namespace

std::optional<int> q2x1_guard_level(const mpz_class& x, int max_bits) {
    for (int k = 2; k <= max_bits; ++k) {
        mpz_class diff = x - q2x1_guard_point(k);
        mpz_fdiv_r_2exp(diff.get_mpz_t(), diff.get_mpz_t(), k);
        if (diff == 0) return k;
    }
    return std::nullopt;
}

std::optional<int> q2x1_guard_level(const OddRational& x, int max_bits) {
    for (int k = 2; k <= max_bits; ++k) {
        OddRational diff = x - OddRational(q2x1_guard_point(k));
        auto val = diff.valuation();
        if (!val.has_value()) return k;  // exactly on the guard point
        if (*val >= static_cast<unsigned long>(k)) return k;
    }
    return std::nullopt;
}

namespace {

struct ExactChecker {
    long budget;
    int fallback_precision;
    bool indeterminate = false;

    std::optional<OddRational> qval(const OddRational& v) {
        QResult r = q_exact(v, budget, fallback_precision);
        if (!r.exact()) {
            indeterminate = true;
            return std::nullopt;
        }
        return r.exact_value;
    }
};

FeqEntry make_entry(const std::string& name, bool pass) {
    return FeqEntry{name, pass ? FeqStatus::pass : FeqStatus::fail, ""};
}

}  // namespace

FeqReport check_functional_equations(const OddRational& x, long budget, int guard_search_bits) {
    FeqReport report;
    ExactChecker chk{budget, 64};
    const OddRational two(2), one(1), three(3);

    // Inverse-side identities hold unconditionally and are always exact.
    {
        OddRational qx = q_inverse_exact(x);
        report.entries.push_back(
            make_entry("qinv2x", q_inverse_exact(two * x) == two * qx));
        report.entries.push_back(make_entry(
            "qinv2x1", q_inverse_exact(two * x + one) == (two * qx - one) / three));
    }

    auto qx = chk.qval(x);
    auto push_q = [&](const std::string& name, const OddRational& lhs_arg,
                      auto rhs_of_qx, bool guard_ok) {
        if (!guard_ok) {
            report.entries.push_back({name, FeqStatus::skipped, "guard not satisfied"});
            return;
        }
        if (!qx) {
            report.entries.push_back({name, FeqStatus::indeterminate, "budget exhausted"});
            return;
        }
        auto lhs = chk.qval(lhs_arg);
        if (!lhs) {
            report.entries.push_back({name, FeqStatus::indeterminate, "budget exhausted"});
            return;
        }
        report.entries.push_back(make_entry(name, *lhs == rhs_of_qx(*qx)));
    };

    push_q("q2x", two * x, [&](const OddRational& q0) { return two * q0; }, true);

    auto k = q2x1_guard_level(x, guard_search_bits);
    push_q(
        "q2x1", two * x + one,
        [&](const OddRational& q0) {
            return two * q0 - OddRational(mpz_class(mpz_class(1) << *k)) + one;
        },
        k.has_value());

    const bool odd = x.parity() == 1;
    push_q("q4x1", OddRational(4) * x + one,
           [&](const OddRational& q0) { return OddRational(4) * q0 - three; }, odd);

    // Q(8x+5) = 4 Q(2x+1) - 3 needs no guard: 2x+1 is always odd.
    {
        auto lhs = chk.qval(OddRational(8) * x + OddRational(5));
        auto mid = chk.qval(two * x + one);
        if (lhs && mid)
            report.entries.push_back(make_entry("q8x5a", *lhs == OddRational(4) * *mid - three));
        else
            report.entries.push_back({"q8x5a", FeqStatus::indeterminate, "budget exhausted"});
    }
    push_q(
        "q8x5b", OddRational(8) * x + OddRational(5),
        [&](const OddRational& q0) {
            return OddRational(8) * q0 - OddRational(mpz_class(mpz_class(1) << (*k + 2))) + one;
        },
        k.has_value());

    push_q("q3x1", three * x + one, [&](const OddRational& q0) { return q0 - one; }, odd);

    return report;
}

FeqReport check_functional_equations_mod(const mpz_class& x, int n) {
    FeqReport report;
    auto eq_mod = [](const mpz_class& a, const mpz_class& b, int bits) {
        mpz_class d = a - b;
        mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
        return d == 0;
    };

    const mpz_class qx = q_mod(x, n);
    const mpz_class ix = qinv_mod(x, n);

    report.entries.push_back(
        make_entry("qinv2x", eq_mod(qinv_mod(2 * x, n + 1), 2 * ix, n + 1)));
    {
        // (2 Q^-1(x) - 1)/3 mod 2^(n+1)
        mpz_class rhs = (2 * ix - 1) * mod_inverse_odd(3, n + 1);
        report.entries.push_back(
            make_entry("qinv2x1", eq_mod(qinv_mod(2 * x + 1, n + 1), rhs, n + 1)));
    }
    report.entries.push_back(make_entry("q2x", eq_mod(q_mod(2 * x, n + 1), 2 * qx, n + 1)));

    auto k = q2x1_guard_level(x, n);
    if (k)
        report.entries.push_back(make_entry(
            "q2x1",
            eq_mod(q_mod(2 * x + 1, n + 1), 2 * qx - (mpz_class(1) << *k) + 1, n + 1)));
    else
        report.entries.push_back({"q2x1", FeqStatus::skipped, "guard not satisfied"});

    if (mpz_odd_p(x.get_mpz_t())) {
        report.entries.push_back(make_entry(
            "q4x1", eq_mod(q_mod(4 * x + 1, n + 2), 4 * qx - 3, n + 2)));
        report.entries.push_back(
            make_entry("q3x1", eq_mod(q_mod(3 * x + 1, n), qx - 1, n)));
    } else {
        report.entries.push_back({"q4x1", FeqStatus::skipped, "x even"});
        report.entries.push_back({"q3x1", FeqStatus::skipped, "x even"});
    }

    report.entries.push_back(make_entry(
        "q8x5a",
        eq_mod(q_mod(8 * x + 5, n + 3), 4 * q_mod(2 * x + 1, n + 1) - 3, n + 3)));
    if (k)
        report.entries.push_back(make_entry(
            "q8x5b",
            eq_mod(q_mod(8 * x + 5, n + 3), 8 * qx - (mpz_class(1) << (*k + 2)) + 1, n + 3)));
    else
        report.entries.push_back({"q8x5b", FeqStatus::skipped, "guard not satisfied"});

    return report;
}

}  // namespace padiclab
