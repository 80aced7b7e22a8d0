#include <doctest.h>

#include <algorithm>
#include <functional>

#include "specialsys/cremona.hpp"
#include "test_support.hpp"

using namespace specialsys;

TEST_SUITE_BEGIN("cremona");

TEST_CASE("apply_cremona on known classes") {
    CHECK(apply_cremona(DivisorClass(1, {1, 1, 0}), 0, 1, 2) == DivisorClass(0, {0, 0, -1}));
    CHECK(apply_cremona(DivisorClass(5, {3, 3, 3}), 0, 1, 2) == DivisorClass(1, {-1, -1, -1}));
    CHECK(apply_cremona(DivisorClass(4, {2, 2, 2, 2, 2}), 0, 1, 2) == DivisorClass(2, {0, 0, 0, 2, 2}));
    // vdim is untouched by the transformation
    CHECK(virtual_dim(DivisorClass(5, {3, 3, 3})) == 2);
    CHECK(virtual_dim(DivisorClass(1, {-1, -1, -1})) == 2);
}

TEST_CASE("apply_cremona zero-extends and rejects slot collisions") {
    CHECK(apply_cremona(DivisorClass(2, {2, 2}), 0, 1, 2) == DivisorClass(0, {0, 0, -2}));
    CHECK_THROWS_AS(apply_cremona(DivisorClass(2, {2, 2}), 0, 1, 1), std::invalid_argument);
}

TEST_CASE("cremona steps preserve the lattice data and are involutions") {
    testsupport::Rng rng(37);
    for (int it = 0; it < 2000; ++it) {
        const DivisorClass a = rng.divisor_class(9, -10, 10).extended(5);
        const DivisorClass b = rng.divisor_class(9, -10, 10).extended(5);
        std::size_t i = static_cast<std::size_t>(rng.range(0, 4));
        std::size_t j = static_cast<std::size_t>(rng.range(0, 4));
        std::size_t k = static_cast<std::size_t>(rng.range(0, 4));
        if (i == j || j == k || i == k) continue;
        const DivisorClass sa = apply_cremona(a, i, j, k);
        const DivisorClass sb = apply_cremona(b, i, j, k);
        CHECK(intersect(sa, sb) == intersect(a, b));
        CHECK(virtual_dim(sa) == virtual_dim(a));
        CHECK(arithmetic_genus(sa) == arithmetic_genus(a));
        CHECK(apply_cremona(sa, i, j, k) == a);  // involution
        const DivisorClass K = canonical_class(std::max(a.slots(), b.slots()));
        CHECK(apply_cremona(K, i, j, k) == K);
    }
}

TEST_CASE("to_standard_form: already standard") {
    const ReducedForm red = to_standard_form(DivisorClass(3, {1, 1, 1}));
    CHECK(red.terminal == Terminal::Standard);
    CHECK(red.cls == DivisorClass(3, {1, 1, 1}));
    CHECK(red.trace.empty());
}

TEST_CASE("to_standard_form: speciality signature of the quartic through five double points") {
    const ReducedForm red = to_standard_form(DivisorClass(4, {2, 2, 2, 2, 2}));
    CHECK(red.terminal == Terminal::NegativeMultiplicity);
    CHECK(red.trace.step_count() == 2);
    CHECK(red.offending_value == -2);
    CHECK(red.cls.normalized() == DivisorClass(0, {0, 0, 0, 0, -2}));
    // replay invariants: the trace maps input to output and back
    CHECK(red.trace.push_forward(DivisorClass(4, {2, 2, 2, 2, 2})) == red.cls);
    CHECK(red.trace.pull_back(red.cls) == DivisorClass(4, {2, 2, 2, 2, 2}));
}

TEST_CASE("to_standard_form: double-line signature of the conic through two double points") {
    // One step with t=2 (third slot zero-extended) lands on +2e_3,
    // i.e. multiplicity entry -2: the fixed double line in disguise.
    const ReducedForm red = to_standard_form(DivisorClass(2, {2, 2}));
    CHECK(red.terminal == Terminal::NegativeMultiplicity);
    CHECK(red.trace.step_count() == 1);
    CHECK(red.offending_value == -2);
    CHECK(red.cls.normalized() == DivisorClass(0, {0, 0, -2}));
}

TEST_CASE("to_standard_form reaches negative degree on empty pencils") {
    // line through one double point: empty, residual degree drops below 0
    const PeeledReduction red = reduce_with_peeling(DivisorClass(1, {2}));
    CHECK(red.terminal == Terminal::NegativeDegree);
}

TEST_CASE("standard-form degree sequence strictly decreases") {
    testsupport::Rng rng(53);
    for (int it = 0; it < 500; ++it) {
        const DivisorClass cls = rng.divisor_class(9, 0, 12);
        const ReducedForm red = to_standard_form(cls);
        DivisorClass cur = cls;
        Int degree = cur.degree;
        for (const auto& entry : red.trace.entries) {
            if (std::holds_alternative<CremonaStep>(entry)) {
                const auto& step = std::get<CremonaStep>(entry);
                CHECK(step.t > 0);
                cur = apply_cremona(cur.extended(3), step.slots[0], step.slots[1], step.slots[2]);
                CHECK(cur.degree < degree);
                degree = cur.degree;
            } else {
                DivisorClass next = cur.extended(std::get<SlotPermutation>(entry).size());
                const auto& order = std::get<SlotPermutation>(entry);
                DivisorClass permuted = next;
                for (std::size_t p = 0; p < order.size(); ++p) permuted.mults[p] = next.mults[order[p]];
                cur = permuted;
            }
        }
        CHECK(cur == red.cls);
    }
}

TEST_CASE("peeling reduction accounts for every removed component") {
    testsupport::Rng rng(59);
    for (int it = 0; it < 500; ++it) {
        const DivisorClass cls = rng.divisor_class(9, 0, 8);
        const PeeledReduction red = reduce_with_peeling(cls);
        CHECK((red.terminal == Terminal::Standard || red.terminal == Terminal::NegativeDegree));
        DivisorClass rebuilt = red.trace.pull_back(red.residual);
        for (const auto& peel : red.peels) rebuilt = rebuilt + peel.count * peel.witness;
        CHECK(rebuilt.normalized() == cls.normalized());
        for (const auto& peel : red.peels) {
            CHECK(self_intersection(peel.witness) == -1);
            CHECK(canonical_degree(peel.witness) == -1);
        }
    }
}

TEST_CASE("is_minus_one_class on known classes") {
    CHECK(is_minus_one_class(exceptional_class(0)));
    CHECK(is_minus_one_class(DivisorClass(1, {1, 1})));
    CHECK(is_minus_one_class(DivisorClass(2, {1, 1, 1, 1, 1})));
    CHECK_FALSE(is_minus_one_class(DivisorClass(1, {1})));  // self-intersection 0
    CHECK_FALSE(is_minus_one_class(DivisorClass(1, {})));
    CHECK_FALSE(is_minus_one_class(DivisorClass(0, {-1, -1})));  // C^2 = -2
    CHECK(is_minus_one_class(DivisorClass(6, {3, 2, 2, 2, 2, 2, 2, 2})));
}

TEST_CASE("enumerate_minus_one_classes small censuses") {
    const auto two = enumerate_minus_one_classes(2, 3);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == DivisorClass(0, {-1}));
    CHECK(two[1] == DivisorClass(0, {0, -1}));
    CHECK(two[2] == DivisorClass(1, {1, 1}));

    CHECK(enumerate_minus_one_classes(6, 5).size() == 27);  // the 27 lines
    CHECK(enumerate_minus_one_classes(6, 9).size() == 27);  // bound-stable

    for (const auto& c : enumerate_minus_one_classes(7, 6)) {
        CHECK(arithmetic_genus(c) == 0);
        CHECK(is_minus_one_class(c));
    }
}

TEST_CASE("enumerate_minus_one_classes rejects out-of-range slot counts") {
    CHECK_THROWS_AS(enumerate_minus_one_classes(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_minus_one_classes(11, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_minus_one_classes(4, -1), std::invalid_argument);
}

TEST_CASE("standard-form classes meet every (-1)-class nonnegatively") {
    testsupport::Rng rng(61);
    const auto curves = enumerate_minus_one_classes(8, 6);
    for (int it = 0; it < 200; ++it) {
        // build a random standard-form class on <= 8 slots
        std::vector<Int> mults;
        const std::size_t n = static_cast<std::size_t>(rng.range(0, 8));
        for (std::size_t i = 0; i < n; ++i) mults.push_back(rng.range(0, 6));
        std::sort(mults.begin(), mults.end(), std::greater<Int>());
        DivisorClass cls(0, mults);
        cls.degree = cls.mult(0) + cls.mult(1) + cls.mult(2) + rng.range(0, 4);
        for (const auto& c : curves) CHECK(intersect(cls, c) >= 0);
    }
}

TEST_SUITE_END();
