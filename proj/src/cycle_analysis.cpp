#include "padiclab/cycle_analysis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

#include "padiclab/q_map.hpp"

namespace padiclab {

namespace {

unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs / 4096, 1)));
}

}  // namespace

PermutationTable::PermutationTable(int level) : level_(level) {
    if (level < 1) throw std::invalid_argument("PermutationTable: level must be >= 1");
    const std::size_t n = std::size_t(1) << (level - 1);
    map_.resize(n);
    auto fill = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t image = q_mod_u64(2 * i + 1, level);
            map_[i] = static_cast<std::uint32_t>((image - 1) / 2);
        }
    };
    unsigned workers = worker_count(n);
    if (workers <= 1) {
        fill(0, n);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk;
            if (lo >= n) break;
            pool.emplace_back(fill, lo, std::min(n, lo + chunk));
        }
        for (auto& t : pool) t.join();
    }
}

std::uint64_t PermutationTable::cycle_length_through(std::uint64_t odd_residue) const {
    const auto start = static_cast<std::uint32_t>((odd_residue - 1) / 2);
    std::uint64_t len = 1;
    for (std::uint32_t i = map_[start]; i != start; i = map_[i]) ++len;
    return len;
}

PermutationTable build_qn(int n, int max_level) {
    if (n > max_level)
        throw std::invalid_argument("build_qn: level " + std::to_string(n) +
                                    " above configured cap " + std::to_string(max_level));
    PermutationTable t(n);
    // Parity preservation makes the odd side closed; bijectivity is checked
    // explicitly since everything downstream assumes it.
    std::vector<bool> hit(t.size(), false);
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::uint32_t img = t.apply_index(static_cast<std::uint32_t>(i));
        if (img >= t.size() || hit[img]) throw std::logic_error("build_qn: table is not a bijection");
        hit[img] = true;
    }
    return t;
}

int CycleRecord::measure_exponent() const {
    return level - static_cast<int>(std::countr_zero(length));
}

std::vector<CycleRecord> cycle_decomposition(const PermutationTable& t, bool with_elements) {
    std::vector<bool> visited(t.size(), false);
    std::vector<CycleRecord> cycles;
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        if (visited[i]) continue;
        CycleRecord c;
        c.level = t.level();
        c.min_element = 2 * std::uint64_t(i) + 1;
        std::uint32_t cur = i;
        do {
            visited[cur] = true;
            if (with_elements) c.elements.push_back(2 * std::uint64_t(cur) + 1);
            ++c.length;
            cur = t.apply_index(cur);
        } while (cur != i);
        if (!std::has_single_bit(c.length))
            throw std::logic_error("cycle_decomposition: cycle length is not a power of two");
        cycles.push_back(std::move(c));
    }
    return cycles;
}

void fill_elements(CycleRecord& c, const PermutationTable& t) {
    if (!c.elements.empty()) return;
    c.elements.reserve(c.length);
    std::uint64_t cur = c.min_element;
    do {
        c.elements.push_back(cur);
        cur = t.apply(cur);
    } while (cur != c.min_element);
}

std::uint64_t permutation_order(const PermutationTable& t) {
    std::uint64_t order = 1;
    for (const auto& c : cycle_decomposition(t)) order = std::max(order, c.length);
    return order;
}

QnLadder::QnLadder(int cap) : cap_(cap) {
    if (cap > 28) throw std::invalid_argument("QnLadder: cap above memory budget");
    tables_.reserve(static_cast<std::size_t>(cap));
    for (int n = 1; n <= cap; ++n) tables_.push_back(build_qn(n, cap));
}

namespace {

// The cycle containing seed, with elements rotated to start at the minimum.
CycleRecord cycle_through(const PermutationTable& t, std::uint64_t seed) {
    CycleRecord c;
    c.level = t.level();
    std::uint64_t cur = seed;
    do {
        c.elements.push_back(cur);
        cur = t.apply(cur);
    } while (cur != seed);
    c.length = c.elements.size();
    auto min_it = std::min_element(c.elements.begin(), c.elements.end());
    std::rotate(c.elements.begin(), min_it, c.elements.end());
    c.min_element = c.elements.front();
    return c;
}

}  // namespace

LiftClassification lift_classification(const CycleRecord& c, const PermutationTable& next) {
    if (next.level() != c.level + 1)
        throw std::invalid_argument("lift_classification: table is not the next level");
    CycleRecord first = cycle_through(next, c.min_element);
    LiftClassification out;
    if (first.length == 2 * c.length) {
        out.kind = LiftKind::doubles;
        out.children.push_back(std::move(first));
    } else if (first.length == c.length) {
        // The two lifts of any element land in the two distinct children.
        out.kind = LiftKind::splits;
        CycleRecord second =
            cycle_through(next, c.min_element + (std::uint64_t(1) << c.level));
        out.children.push_back(std::move(first));
        out.children.push_back(std::move(second));
    } else {
        throw std::logic_error("lift_classification: lift length is neither kept nor doubled");
    }
    return out;
}

EverDoubling is_ever_doubling(const CycleRecord& c, const QnLadder& ladder) {
    int level = c.level;
    std::uint64_t length = c.length;
    const std::uint64_t seed = c.min_element;
    // Follow lifts until the cycle is long enough for the two-level test.
    while (length < 4) {
        if (level + 1 > ladder.cap()) return EverDoubling::indeterminate;
        std::uint64_t lifted = ladder.at(level + 1).cycle_length_through(seed);
        if (lifted == length) return EverDoubling::no;  // split
        ++level;
        length = lifted;
    }
    if (level + 2 > ladder.cap()) return EverDoubling::indeterminate;
    return ladder.at(level + 2).cycle_length_through(seed) == 4 * length ? EverDoubling::yes
                                                                         : EverDoubling::no;
}

ErgodicEnumeration enumerate_ergodic_sets(int max_k, int level_cap) {
    if (level_cap < max_k + 2)
        throw std::invalid_argument("enumerate_ergodic_sets: need level_cap >= max_k + 2");
    ErgodicEnumeration out;
    out.max_k = max_k;
    out.level_cap = level_cap;
    out.counts.assign(static_cast<std::size_t>(max_k) + 1, 0);

    // Base cycles are searched up to level_cap; the ladder carries two more
    // levels so the ever-doubling test is decidable for every candidate of
    // measure 2^-k, k <= max_k (cycles of length < 4 need up to four extra
    // levels, but those only occur at levels <= max_k <= level_cap - 2).
    QnLadder ladder(level_cap + 2);
    for (int m = 1; m <= level_cap; ++m) {
        for (auto& c : cycle_decomposition(ladder.at(m))) {
            const int k = c.measure_exponent();
            if (k < 1 || k > max_k) continue;
            // Minimality: skip cycles that are doubling-lifts, so each limit
            // set is recorded once, at the base of its tower.
            if (m > 1) {
                std::uint64_t proj = c.min_element & ((std::uint64_t(1) << (m - 1)) - 1);
                if (c.length >= 2 &&
                    ladder.at(m - 1).cycle_length_through(proj) == c.length / 2)
                    continue;
            }
            switch (is_ever_doubling(c, ladder)) {
                case EverDoubling::yes: {
                    fill_elements(c, ladder.at(m));
                    out.records.push_back(ErgodicSetRecord{k, std::move(c)});
                    ++out.counts[static_cast<std::size_t>(k)];
                    break;
                }
                case EverDoubling::indeterminate:
                    ++out.indeterminate;
                    break;
                case EverDoubling::no:
                    break;
            }
        }
    }
    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.measure_exponent, a.base.level, a.base.min_element) <
               std::tuple(b.measure_exponent, b.base.level, b.base.min_element);
    });
    return out;
}

MeasureSummary measure_summary(const ErgodicEnumeration& e) {
    MeasureSummary s{0, 0};
    for (std::size_t k = 1; k < e.counts.size(); ++k) {
        mpq_class term(e.counts[k], 1);
        term /= mpq_class(mpz_class(1) << k, 1);
        s.odd_total += term;
    }
    s.odd_total.canonicalize();
    // Each odd set of measure 2^-k yields even sets of measure 2^-k-m for
    // every m >= 1; the geometric series doubles the total.
    s.full_total = 2 * s.odd_total;
    return s;
}

}  // namespace padiclab
