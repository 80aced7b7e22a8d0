#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "specialsys/divisor.hpp"

namespace specialsys {

/// One quadratic transformation based at three slots. With
/// t = m_i + m_j + m_k - d the image is
///   (d - t; ..., m_i - t, ..., m_j - t, ..., m_k - t, ...),
/// i.e. degree 2d - m_i - m_j - m_k and each chosen multiplicity
/// replaced by d minus the sum of the other two. Applying the same
/// step twice is the identity.
struct CremonaStep {
    std::array<std::size_t, 3> slots{};
    Int t = 0;  // value of m_i + m_j + m_k - d when the step was taken

    bool operator==(const CremonaStep&) const = default;
};

/// order[k] = slot (before sorting) whose multiplicity lands at k.
using SlotPermutation = std::vector<std::size_t>;

/// Ordered log of permutations and Cremona steps mapping an input
/// class to a reduced one. Replaying the trace on the input reproduces
/// the output; pulling the output back through the inverse reproduces
/// the input. Witness classes found in reduced coordinates are mapped
/// to original slot labels with pull_back.
struct CremonaTrace {
    using Entry = std::variant<CremonaStep, SlotPermutation>;
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }
    std::size_t step_count() const;

    DivisorClass push_forward(DivisorClass cls) const;
    DivisorClass pull_back(DivisorClass cls) const;
};

/// Quadratic Cremona transformation at slots (i, j, k); the class is
/// zero-extended if a slot lies beyond its range. Slots must be
/// distinct. Preserves the pairing between similarly transformed
/// classes and fixes the canonical class.
DivisorClass apply_cremona(const DivisorClass& cls, std::size_t i, std::size_t j, std::size_t k);

enum class Terminal { Standard, NegativeDegree, NegativeMultiplicity };

/// Result of to_standard_form: either a standard-form class
/// (multiplicities sorted descending, all >= 0, d >= m1+m2+m3) or the
/// degenerate shape that stopped the reduction.
struct ReducedForm {
    DivisorClass cls;       // terminal class, in reduced coordinates
    CremonaTrace trace;
    Terminal terminal = Terminal::Standard;
    std::size_t offending_slot = 0;  // NegativeMultiplicity only
    Int offending_value = 0;         // value at that slot (< 0)
};

/// Sort multiplicities descending and apply Cremona steps at the three
/// largest slots until the class is in standard form or degenerates.
/// Every step taken has t > 0, so the degree strictly decreases and
/// the loop terminates. Stops at the first negative multiplicity.
ReducedForm to_standard_form(const DivisorClass& cls);

/// A fixed component subtracted during peeling reduction: `witness` in
/// the input slot labels (normalized) and how many copies came off.
struct PeelRecord {
    DivisorClass witness;
    Int count = 0;

    bool operator==(const PeelRecord&) const = default;
};

/// to_standard_form variant used by the speciality classifier: a
/// negative entry -c is peeled (c copies of the pulled-back
/// exceptional class are recorded and the entry zeroed) and reduction
/// continues, so the terminal is Standard or NegativeDegree only.
/// A -1 entry is a dimension-neutral fixed curve; c >= 2 is the
/// speciality signature consumed by the caller.
struct PeeledReduction {
    DivisorClass residual;  // terminal class, in reduced coordinates
    CremonaTrace trace;
    Terminal terminal = Terminal::Standard;
    std::vector<PeelRecord> peels;
};

PeeledReduction reduce_with_peeling(const DivisorClass& cls);

/// True iff C^2 = -1, C.K = -1 and the class Cremona-reduces to a
/// single exceptional class, i.e. lies in the orbit of e_1 under
/// permutations and quadratic transformations.
bool is_minus_one_class(const DivisorClass& cls);

/// All (-1)-classes (delta; mu_1..mu_r) with delta <= max_degree on r
/// labeled slots: the r exceptional classes plus every solution of
/// delta^2 - sum mu_i^2 = -1, 3 delta - sum mu_i = 1 with mu_i >= 0,
/// each validated by is_minus_one_class. Deterministic order: degree,
/// then lexicographic on the multiplicity vector. Results are memoized
/// behind an internal lock. Requires 1 <= r <= 10.
std::vector<DivisorClass> enumerate_minus_one_classes(std::size_t r, Int max_degree);

}  // namespace specialsys
