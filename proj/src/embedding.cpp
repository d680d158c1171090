#include "padiclab/embedding.hpp"

#include <stdexcept>

namespace padiclab {

namespace {

// Value of the reversed k-bit pattern of n: M(n mod 2^k) = rev_k(n) / 2^(k-1).
std::uint64_t reverse_bits(std::uint64_t n, int k) {
    std::uint64_t r = 0;
    for (int i = 0; i < k; ++i)
        if ((n >> i) & 1) r |= std::uint64_t(1) << (k - 1 - i);
    return r;
}

DyadicRational monna_u64(std::uint64_t n, int k) {
    return DyadicRational(mpz_class(static_cast<unsigned long>(reverse_bits(n, k))),
                          static_cast<unsigned>(k - 1));
}

mpq_class half_pow(unsigned e) {  // 2^-e
    mpq_class q(1, mpz_class(1) << e);
    q.canonicalize();
    return q;
}

}  // namespace

DyadicRational monna(const TruncatedPadic& x) {
    const int n = x.precision();
    mpz_class rev = 0;
    for (int i = 0; i < n; ++i)
        if (x.bit(i)) mpz_setbit(rev.get_mpz_t(), n - 1 - i);
    return DyadicRational(rev, static_cast<unsigned>(n - 1));
}

mpq_class monna_exact(const EventuallyPeriodicBits& e) {
    const auto a = static_cast<unsigned>(e.preperiod.size());
    const auto l = static_cast<unsigned>(e.period.size());
    mpq_class sum = 0;
    for (unsigned i = 0; i < a; ++i)
        if (e.preperiod[i]) sum += half_pow(i);
    mpq_class per = 0;
    for (unsigned i = 0; i < l; ++i)
        if (e.period[i]) per += half_pow(i);
    // Tail: 2^-a * per * 1/(1 - 2^-l)
    mpq_class tail = half_pow(a) * per / (mpq_class(1) - half_pow(l));
    sum += tail;
    sum.canonicalize();
    return sum;
}

mpq_class monna_exact(const OddRational& x) { return monna_exact(periodic_bits_of(x)); }

EmbeddedPoint embed_point(const OddRational& r, long budget) {
    QResult qr = q_exact(r, budget);
    if (!qr.exact())
        throw std::runtime_error("embed_point: orbit of " + r.to_string() +
                                 " did not cycle within budget");
    EmbeddedPoint p;
    p.parameter = r;
    p.q_of_parameter = *qr.exact_value;
    p.x = monna_exact(r);
    p.y = monna_exact(p.q_of_parameter);
    return p;
}

GridPoint embed_residue(std::uint64_t n, int k) {
    if (k < 1 || k > 24) throw std::invalid_argument("embed_residue: need 1 <= k <= 24");
    GridPoint p;
    p.n = n;
    p.x = monna_u64(n, k);
    p.y = monna_u64(q_mod_u64(n & ((std::uint64_t(1) << k) - 1), k), k);
    return p;
}

void for_each_grid_point(int k, const std::function<void(const GridPoint&)>& fn) {
    if (k < 1 || k > 24) throw std::invalid_argument("for_each_grid_point: need 1 <= k <= 24");
    for (std::uint64_t n = 0; n < (std::uint64_t(1) << k); ++n) fn(embed_residue(n, k));
}

std::vector<GridPoint> generate_set(int k) {
    std::vector<GridPoint> out;
    out.reserve(std::size_t(1) << k);
    for_each_grid_point(k, [&](const GridPoint& p) { out.push_back(p); });
    return out;
}

BoxCover box_cover(int k) {
    BoxCover cover;
    cover.k = k;
    cover.side = DyadicRational(1, static_cast<unsigned>(k - 1));
    cover.corners = generate_set(k);
    return cover;
}

IntervalFamily interval_family(int k, int sample_depth) {
    if (k < 2 || k > 62) throw std::invalid_argument("interval_family: need 2 <= k <= 62");
    IntervalFamily f;
    f.k = k;
    f.m = (std::uint64_t(1) << (k - 2)) - 1;
    f.n = 3 * (std::uint64_t(1) << (k - 2)) - 1;
    f.alpha = (k % 2 == 1) ? f.m : f.n;

    const mpq_class two(2);
    f.i_lo = two - half_pow(static_cast<unsigned>(k)) * 8;  // 2 - 2^(3-k)
    f.i_hi = two - half_pow(static_cast<unsigned>(k)) * 6;  // 2 - 3*2^(1-k)
    f.j_lo = f.i_hi;
    f.j_hi = two - half_pow(static_cast<unsigned>(k)) * 4;  // 2 - 2^(2-k)

    // The closed-form endpoints must match the images of the guard residues.
    if (k <= 24) {
        if (monna_u64(f.m, k).to_mpq() != f.i_lo || monna_u64(f.n, k).to_mpq() != f.i_hi)
            throw std::logic_error("interval_family: endpoint mismatch");
    }

    // alpha_k = -1 - (-2)^(k-2) mod 2^k must coincide with m_k or n_k.
    {
        mpz_class pow = mpz_class(1) << (k - 2);
        if (k % 2 == 1) pow = -pow;
        mpz_class alpha = -1 - pow;
        mpz_fdiv_r_2exp(alpha.get_mpz_t(), alpha.get_mpz_t(), k);
        if (alpha != static_cast<unsigned long>(f.alpha))
            throw std::logic_error("interval_family: alpha formula mismatch");
    }

    // Q swaps m_k and n_k mod 2^k for odd k and fixes both for even k.
    if (k <= 62) {
        std::uint64_t qm = q_mod_u64(f.m, k), qn = q_mod_u64(f.n, k);
        f.congruences_ok = (k % 2 == 0) ? (qm == f.m && qn == f.n) : (qm == f.n && qn == f.m);
    }

    // Sample the balls: Y(B(alpha_k, 2^-k)) should stay in J_k and
    // Y(B(2 alpha_k + 1, 2^-k-1)) in I_(k+1).
    if (k + sample_depth <= 62) {
        f.ball_image_ok = true;
        const int depth = k + sample_depth;
        for (std::uint64_t t = 0; t < (std::uint64_t(1) << sample_depth); ++t) {
            std::uint64_t r = f.alpha + (t << k);
            mpq_class y = monna_u64(q_mod_u64(r, depth), depth).to_mpq();
            if (y < f.j_lo || y > f.j_hi) f.ball_image_ok = false;
            std::uint64_t r2 = 2 * r + 1;
            mpq_class y2 = monna_u64(q_mod_u64(r2, depth + 1), depth + 1).to_mpq();
            mpq_class i1_lo = two - half_pow(static_cast<unsigned>(k + 1)) * 8;
            mpq_class i1_hi = two - half_pow(static_cast<unsigned>(k + 1)) * 6;
            if (y2 < i1_lo || y2 > i1_hi) f.ball_image_ok = false;
        }
    }
    return f;
}

SelfAffineCheck check_self_affine(const mpz_class& r, int k, int precision) {
    if (precision < k || k < 2)
        throw std::invalid_argument("check_self_affine: need precision >= k >= 2");
    SelfAffineCheck out;
    TruncatedPadic rp(r, precision);
    const mpq_class x_r = monna(rp).to_mpq();
    const mpq_class y_r = monna(q(rp)).to_mpq();

    TruncatedPadic even(2 * r, precision + 1);
    out.even_ok = monna(even).to_mpq() == x_r / 2 && monna(q(even)).to_mpq() == y_r / 2;

    mpz_class pow = mpz_class(1) << (k - 2);
    if (k % 2 == 1) pow = -pow;
    mpz_class alpha = -1 - pow;
    mpz_class diff = r - alpha;
    mpz_fdiv_r_2exp(diff.get_mpz_t(), diff.get_mpz_t(), k);
    out.guard_ok = diff == 0;
    if (out.guard_ok) {
        TruncatedPadic odd(2 * r + 1, precision + 1);
        mpq_class shift = mpq_class(1) - half_pow(static_cast<unsigned>(k));
        out.odd_ok = monna(odd).to_mpq() == x_r / 2 + 1 &&
                     monna(q(odd)).to_mpq() == y_r / 2 + shift;
    }
    return out;
}

std::vector<BoxCountRow> box_counting_stats(int k_max) {
    if (k_max < 2 || k_max > 62) throw std::invalid_argument("box_counting_stats: need 2 <= k <= 62");
    std::vector<BoxCountRow> rows;
    for (int k = 2; k <= k_max; ++k)
        rows.push_back(BoxCountRow{k, std::uint64_t(1) << k,
                                   static_cast<double>(k) / static_cast<double>(k - 1)});
    return rows;
}

std::vector<std::uint64_t> symmetry_report(int k) {
    if (k < 1 || k > 24) throw std::invalid_argument("symmetry_report: need 1 <= k <= 24");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 0; n < (std::uint64_t(1) << k); ++n)
        if (q_mod_u64(q_mod_u64(n, k), k) == n) out.push_back(n);
    return out;
}

}  // namespace padiclab
