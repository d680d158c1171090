#ifndef PADICLAB_Q_MAP_HPP
#define PADICLAB_Q_MAP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padiclab/collatz.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/parity_transform.hpp"

namespace padiclab {

/// Q encodes the parity sequence of x as a 2-adic integer. It is a
/// measure-preserving isometry, so Q(x) mod 2^n depends only on x mod 2^n.

/// Fast path for n <= 64. Wrapping 64-bit arithmetic is exact here: step k
/// only ever reads bit 0, which is correct as long as k < n.
std::uint64_t q_mod_u64(std::uint64_t x, int n);

mpz_class q_mod(const mpz_class& x, int n);
TruncatedPadic q(const TruncatedPadic& x);

/// Inverse permutation mod 2^n, computed by the first inverse-transform
/// formulation applied to the bits of y.
std::uint64_t qinv_mod_u64(std::uint64_t y, int n);
mpz_class qinv_mod(const mpz_class& y, int n);
TruncatedPadic q_inverse(const TruncatedPadic& y);

/// Result of an exact Q evaluation: rational when the T-orbit cycled
/// within budget (exactly when Q(x) is rational), else a truncation.
struct QResult {
    std::optional<OddRational> exact_value;
    std::optional<TruncatedPadic> truncated_value;
    bool budget_exhausted = false;

    bool exact() const { return exact_value.has_value(); }
    std::string to_string() const {
        if (exact_value) return exact_value->to_string();
        return truncated_value->to_string() + "... (budget exhausted)";
    }
};

/// Q(x) in closed form when the orbit of x cycles within budget; otherwise
/// the first fallback_precision bits with budget_exhausted set.
QResult q_exact(const OddRational& x, long budget = 100000, int fallback_precision = 64);

/// Q^-1 of a rational is always exactly computable: the digit expansion of
/// a rational is eventually periodic by construction.
OddRational q_inverse_exact(const OddRational& y);

/// Q^j (j < 0 iterates the inverse). Exact as long as every forward
/// intermediate cycles within budget.
QResult q_iterate(const OddRational& x, long j, long budget = 100000,
                  int fallback_precision = 64);
mpz_class q_iterate_mod(const mpz_class& x, long j, int n);

enum class FeqStatus { pass, fail, skipped, indeterminate };

struct FeqEntry {
    std::string name;
    FeqStatus status;
    std::string note;
};

struct FeqReport {
    std::vector<FeqEntry> entries;

    bool all_passed() const {
        for (const auto& e : entries)
            if (e.status == FeqStatus::fail) return false;
        return true;
    }
};

/// Verifies the functional equations satisfied by Q and its inverse on one
/// input, exactly on rationals:
///   qinv2x:   Q^-1(2x)   = 2 Q^-1(x)
///   qinv2x1:  Q^-1(2x+1) = (2 Q^-1(x) - 1)/3
///   q2x:      Q(2x)      = 2 Q(x)
///   q2x1:     Q(2x+1)    = 2 Q(x) - 2^k + 1   for x = -1 - (-2)^(k-2) mod 2^k
///   q4x1:     Q(4x+1)    = 4 Q(x) - 3         for x odd
///   q8x5a:    Q(8x+5)    = 4 Q(2x+1) - 3
///   q8x5b:    Q(8x+5)    = 8 Q(x) - 2^(k+2) + 1 under the q2x1 guard
///   q3x1:     Q(3x+1)    = Q(x) - 1           for x odd
/// Guards that do not apply are reported as skipped; budget exhaustion in
/// any Q evaluation is reported as indeterminate.
FeqReport check_functional_equations(const OddRational& x, long budget = 100000,
                                     int guard_search_bits = 64);

/// Same identities checked modulo 2^n for a residue input.
FeqReport check_functional_equations_mod(const mpz_class& x, int n);

/// Smallest k >= 2 with x = -1 - (-2)^(k-2) (mod 2^k), searched up to
/// max_bits; the guard classes for distinct k are disjoint.
std::optional<int> q2x1_guard_level(const OddRational& x, int max_bits);
std::optional<int> q2x1_guard_level(const mpz_class& x, int max_bits);

}  // namespace padiclab

#endif
