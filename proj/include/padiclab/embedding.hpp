#ifndef PADICLAB_EMBEDDING_HPP
#define PADICLAB_EMBEDDING_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "padiclab/padic.hpp"
#include "padiclab/q_map.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

/// Bit-reversal map sum r_k 2^k -> sum r_k 2^-k, from the 2-adic integers
/// onto [0, 2]. 2-Lipschitz, sends a ball of radius 2^-k onto an interval
/// of length 2^(1-k); odd inputs land in [1,2], even ones in [0,1]. Not
/// injective on the dyadic image points, which is documented behavior:
/// plotted points are keyed by parameter, never by coordinates.
DyadicRational monna(const TruncatedPadic& x);
mpq_class monna_exact(const EventuallyPeriodicBits& e);
mpq_class monna_exact(const OddRational& x);

/// One point of the plane set: (X, Y) = (M(r), M(Q(r))).
struct EmbeddedPoint {
    OddRational parameter;
    OddRational q_of_parameter;
    mpq_class x;
    mpq_class y;
};

/// Exact evaluation; throws if the orbit of r fails to cycle within budget.
EmbeddedPoint embed_point(const OddRational& r, long budget = 100000);

/// Grid point from a k-bit parameter: coordinates are exact dyadics with
/// exponent < k.
struct GridPoint {
    std::uint64_t n = 0;
    DyadicRational x;
    DyadicRational y;
};

GridPoint embed_residue(std::uint64_t n, int k);

/// Points for every parameter 0 <= n < 2^k, ascending; the callback form
/// streams them without materializing the whole set.
void for_each_grid_point(int k, const std::function<void(const GridPoint&)>& fn);
std::vector<GridPoint> generate_set(int k);

/// 2^k axis-aligned squares of side 2^(1-k) that cover the whole set: box n
/// sits at (M(n), M(Q(n) mod 2^k)).
struct BoxCover {
    int k = 0;
    DyadicRational side;
    std::vector<GridPoint> corners;  // corner of box n at index n
};

BoxCover box_cover(int k);

/// Guard residues and interval pair at depth k:
///   alpha_k = -1 - (-2)^(k-2) mod 2^k,  m_k = 2^(k-2)-1,  n_k = 3*2^(k-2)-1,
///   I_k = [M(m_k), M(n_k)], J_k = [M(n_k), M(m_(k+1))], both of length 2^(1-k).
/// Construction re-checks the fixed-point congruences of m_k, n_k under Q_k
/// and the ball-to-interval images by sampling.
struct IntervalFamily {
    int k = 0;
    std::uint64_t alpha = 0;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    mpq_class i_lo, i_hi;
    mpq_class j_lo, j_hi;
    bool congruences_ok = false;   // Q(m_k), Q(n_k) fixed or swapped per parity of k
    bool ball_image_ok = false;    // Y(B(alpha_k, 2^-k)) lands in J_k, and the
                                   // shifted ball lands in I_(k+1)
};

IntervalFamily interval_family(int k, int sample_depth = 8);

/// Exact dyadic verification of the self-affine relations on truncated
/// expansions at depth `precision`:
///   (X,Y)(2r)   = (X,Y)(r) / 2                          (any r)
///   (X,Y)(2r+1) = (X,Y)(r) / 2 + (1, 1 - 2^-k)          (r = alpha_k mod 2^k)
struct SelfAffineCheck {
    bool even_ok = false;
    bool guard_ok = false;  // r = alpha_k mod 2^k held, so the odd relation applied
    bool odd_ok = false;    // vacuously true when the guard does not apply

    bool passed() const { return even_ok && (!guard_ok || odd_ok); }
};

SelfAffineCheck check_self_affine(const mpz_class& r, int k, int precision);

/// nu_k = 2^k boxes of side 2^(1-k): the box-count ratio log nu / log(1/side)
/// = k/(k-1) is the dimension estimate at depth k.
struct BoxCountRow {
    int k;
    std::uint64_t boxes;
    double ratio;
};

std::vector<BoxCountRow> box_counting_stats(int k_max);

/// Residues n < 2^k whose embedded point has its mirror across the diagonal
/// in the depth-k set: exactly those with Q_k(Q_k(n)) = n.
std::vector<std::uint64_t> symmetry_report(int k);

}  // namespace padiclab

#endif
