#ifndef PADICLAB_CYCLE_ANALYSIS_HPP
#define PADICLAB_CYCLE_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

/// Q preserves parity, so it acts on the odd residues mod 2^n; the even
/// side is carried by Q(2x) = 2 Q(x). Tables index odd residues by
/// (x - 1) / 2 and store the image index, one 32-bit word per element.
class PermutationTable {
public:
    explicit PermutationTable(int level);

    int level() const { return level_; }
    std::size_t size() const { return map_.size(); }

    std::uint64_t apply(std::uint64_t odd_residue) const {
        return 2 * map_[static_cast<std::size_t>((odd_residue - 1) / 2)] + 1;
    }
    std::uint32_t apply_index(std::uint32_t index) const { return map_[index]; }

    /// Length of the cycle through the given odd residue.
    std::uint64_t cycle_length_through(std::uint64_t odd_residue) const;

private:
    int level_;
    std::vector<std::uint32_t> map_;
};

/// Builds the table of Q_n on odd residues and verifies it is a bijection.
PermutationTable build_qn(int n, int max_level = 24);

struct CycleRecord {
    int level = 0;
    std::uint64_t length = 0;
    std::uint64_t min_element = 0;          // smallest odd residue on the cycle
    std::vector<std::uint64_t> elements;    // in orbit order from min_element

    /// Measure exponent k of the associated limit set: measure = 2^-k.
    int measure_exponent() const;
};

/// Disjoint cycles covering all odd residues, sorted by smallest element.
/// Fails hard if any length is not a power of two.
std::vector<CycleRecord> cycle_decomposition(const PermutationTable& t,
                                             bool with_elements = false);

/// Fills in the element list of a record by walking the table.
void fill_elements(CycleRecord& c, const PermutationTable& t);

/// Order of the permutation: the maximum cycle length, since all lengths
/// are powers of two.
std::uint64_t permutation_order(const PermutationTable& t);

/// A stack of tables Q_1 .. Q_cap, built once and shared read-only.
class QnLadder {
public:
    explicit QnLadder(int cap);
    int cap() const { return cap_; }
    const PermutationTable& at(int level) const { return tables_[static_cast<std::size_t>(level - 1)]; }

private:
    int cap_;
    std::vector<PermutationTable> tables_;
};

enum class LiftKind { splits, doubles };

struct LiftClassification {
    LiftKind kind;
    std::vector<CycleRecord> children;  // two on split, one on doubling
};

/// Traces a cycle of Q_m inside Q_(m+1): the preimage set either stays one
/// cycle of doubled length or breaks into two cycles of the same length.
LiftClassification lift_classification(const CycleRecord& c, const PermutationTable& next);

enum class EverDoubling { no, yes, indeterminate };

/// A cycle has an ever-doubling period when every lift keeps it in a single
/// cycle of doubled length. Decidable by a finite test: once the length is
/// at least 4, being inside a single cycle of length x4 two levels up
/// settles it. Shorter cycles are followed upward through doublings first.
/// indeterminate means the ladder is too short to run the test.
EverDoubling is_ever_doubling(const CycleRecord& c, const QnLadder& ladder);

struct ErgodicSetRecord {
    int measure_exponent = 0;  // measure = 2^-k
    CycleRecord base;          // the cycle at its minimal level
};

struct ErgodicEnumeration {
    int max_k = 0;
    int level_cap = 0;
    std::vector<ErgodicSetRecord> records;  // sorted by (k, level, min element)
    std::vector<long> counts;               // counts[k] = N_k, index 0 unused
    long indeterminate = 0;                 // candidates the cap could not settle
};

/// All odd ergodic sets of measure 2^-k (k <= max_k) whose base cycles are
/// visible below the level cap: the minimal-level ever-doubling cycles,
/// one record per limit set. Completeness is relative to the cap.
ErgodicEnumeration enumerate_ergodic_sets(int max_k, int level_cap);

struct MeasureSummary {
    mpq_class odd_total;   // sum N_k 2^-k
    mpq_class full_total;  // odd total doubled by the even-side towers
};

MeasureSummary measure_summary(const ErgodicEnumeration& e);

}  // namespace padiclab

#endif
