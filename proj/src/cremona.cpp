#include "specialsys/cremona.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>

namespace specialsys {

namespace {

bool is_identity(const SlotPermutation& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

DivisorClass apply_permutation(const DivisorClass& cls, const SlotPermutation& order) {
    DivisorClass src = cls.extended(order.size());
    DivisorClass out = src;
    for (std::size_t k = 0; k < order.size(); ++k) out.mults[k] = src.mults[order[k]];
    return out;
}

DivisorClass apply_permutation_inverse(const DivisorClass& cls, const SlotPermutation& order) {
    DivisorClass src = cls.extended(order.size());
    DivisorClass out = src;
    for (std::size_t k = 0; k < order.size(); ++k) out.mults[order[k]] = src.mults[k];
    return out;
}

DivisorClass apply_step(const DivisorClass& cls, const CremonaStep& step) {
    return apply_cremona(cls, step.slots[0], step.slots[1], step.slots[2]);
}

}  // namespace

std::size_t CremonaTrace::step_count() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (std::holds_alternative<CremonaStep>(e)) ++n;
    return n;
}

DivisorClass CremonaTrace::push_forward(DivisorClass cls) const {
    for (const auto& e : entries) {
        if (const auto* step = std::get_if<CremonaStep>(&e))
            cls = apply_step(cls, *step);
        else
            cls = apply_permutation(cls, std::get<SlotPermutation>(e));
    }
    return cls;
}

DivisorClass CremonaTrace::pull_back(DivisorClass cls) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (const auto* step = std::get_if<CremonaStep>(&*it))
            cls = apply_step(cls, *step);  // each step is an involution
        else
            cls = apply_permutation_inverse(cls, std::get<SlotPermutation>(*it));
    }
    return cls;
}

DivisorClass apply_cremona(const DivisorClass& cls, std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || i == k || j == k)
        throw std::invalid_argument("apply_cremona: slots must be distinct");
    DivisorClass out = cls.extended(std::max({i, j, k}) + 1);
    const Int d = out.degree;
    const Int mi = out.mults[i], mj = out.mults[j], mk = out.mults[k];
    const Int t = checked_sub(checked_add(checked_add(mi, mj), mk), d);
    out.degree = checked_sub(d, t);
    out.mults[i] = checked_sub(mi, t);
    out.mults[j] = checked_sub(mj, t);
    out.mults[k] = checked_sub(mk, t);
    return out;
}

namespace {

// Shared engine behind to_standard_form and reduce_with_peeling.
// Loop: stable-sort descending (recorded when nontrivial), handle
// negative entries per mode, then either stop (standard / negative
// degree) or step at the three largest slots. Stable sorting makes
// ties resolve to the lowest slot indices, which keeps traces
// deterministic.
struct ReductionEngine {
    DivisorClass cur;
    CremonaTrace trace;
    std::vector<PeelRecord> peels;
    bool peeling = false;

    Terminal run(std::size_t* neg_slot, Int* neg_value) {
        for (;;) {
            sort_descending();
            if (auto slot = first_negative()) {
                if (!peeling) {
                    *neg_slot = *slot;
                    *neg_value = cur.mults[*slot];
                    return Terminal::NegativeMultiplicity;
                }
                peel(*slot);
                continue;
            }
            if (cur.degree < 0) return Terminal::NegativeDegree;
            const Int top3 = cur.mult(0) + cur.mult(1) + cur.mult(2);
            if (cur.degree >= top3) return Terminal::Standard;
            cur = cur.extended(3);
            const Int t = top3 - cur.degree;  // > 0 here
            CremonaStep step{{0, 1, 2}, t};
            trace.entries.emplace_back(step);
            cur = apply_step(cur, step);
        }
    }

    void sort_descending() {
        SlotPermutation order(cur.slots());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return cur.mults[a] > cur.mults[b]; });
        if (is_identity(order)) return;
        trace.entries.emplace_back(order);
        cur = apply_permutation(cur, order);
    }

    std::optional<std::size_t> first_negative() const {
        for (std::size_t i = 0; i < cur.slots(); ++i)
            if (cur.mults[i] < 0) return i;
        return std::nullopt;
    }

    void peel(std::size_t slot) {
        const Int count = -cur.mults[slot];
        PeelRecord rec{trace.pull_back(exceptional_class(slot)).normalized(), count};
        peels.push_back(std::move(rec));
        cur.mults[slot] = 0;
    }
};

}  // namespace

ReducedForm to_standard_form(const DivisorClass& cls) {
    ReductionEngine eng;
    eng.cur = cls;
    ReducedForm out;
    out.terminal = eng.run(&out.offending_slot, &out.offending_value);
    out.cls = std::move(eng.cur);
    out.trace = std::move(eng.trace);
    return out;
}

PeeledReduction reduce_with_peeling(const DivisorClass& cls) {
    ReductionEngine eng;
    eng.cur = cls;
    eng.peeling = true;
    std::size_t slot = 0;
    Int value = 0;
    PeeledReduction out;
    out.terminal = eng.run(&slot, &value);
    out.residual = std::move(eng.cur);
    out.trace = std::move(eng.trace);
    out.peels = std::move(eng.peels);
    return out;
}

bool is_minus_one_class(const DivisorClass& cls) {
    if (self_intersection(cls) != -1 || canonical_degree(cls) != -1) return false;
    DivisorClass cur = cls.normalized();
    for (;;) {
        std::sort(cur.mults.begin(), cur.mults.end(), std::greater<Int>());
        if (!cur.mults.empty() && cur.mults.back() < 0) {
            // Acceptable terminal: a single exceptional class.
            if (cur.degree != 0 || cur.mults.back() != -1) return false;
            for (std::size_t i = 0; i + 1 < cur.mults.size(); ++i)
                if (cur.mults[i] != 0) return false;
            return true;
        }
        if (cur.degree < 0) return false;
        const Int top3 = cur.mult(0) + cur.mult(1) + cur.mult(2);
        if (cur.degree >= top3) return false;  // stuck in standard form, not exceptional
        cur = apply_cremona(cur.extended(3), 0, 1, 2);
    }
}

namespace {

void enumerate_mults(std::size_t r, Int delta, std::size_t slot, Int sum_left, Int sq_left,
                     std::vector<Int>& mu, std::vector<DivisorClass>& out) {
    if (slot == r) {
        if (sum_left == 0 && sq_left == 0) {
            DivisorClass cand(delta, mu);
            if (is_minus_one_class(cand)) out.push_back(cand.normalized());
        }
        return;
    }
    const Int slots_left = static_cast<Int>(r - slot);
    for (Int v = 0; v <= delta; ++v) {
        if (v > sum_left || v * v > sq_left) break;
        // remaining slots must be able to absorb the rest
        if (sum_left - v > (slots_left - 1) * delta) continue;
        mu[slot] = v;
        enumerate_mults(r, delta, slot + 1, sum_left - v, sq_left - v * v, mu, out);
    }
    mu[slot] = 0;
}

}  // namespace

std::vector<DivisorClass> enumerate_minus_one_classes(std::size_t r, Int max_degree) {
    if (r < 1 || r > 10) throw std::invalid_argument("enumerate_minus_one_classes: r must be in [1, 10]");
    if (max_degree < 0) throw std::invalid_argument("enumerate_minus_one_classes: negative degree bound");

    static std::mutex memo_mutex;
    static std::map<std::pair<std::size_t, Int>, std::vector<DivisorClass>> memo;
    {
        std::scoped_lock lock(memo_mutex);
        if (auto it = memo.find({r, max_degree}); it != memo.end()) return it->second;
    }

    std::vector<DivisorClass> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(exceptional_class(i));
    for (Int delta = 1; delta <= max_degree; ++delta) {
        std::vector<Int> mu(r, 0);
        enumerate_mults(r, delta, 0, 3 * delta - 1, delta * delta + 1, mu, out);
    }

    std::scoped_lock lock(memo_mutex);
    memo[{r, max_degree}] = out;
    return out;
}

}  // namespace specialsys
