#include <catch2/catch.hpp>

#include "patqsym/shape.hpp"

using namespace patqsym;

TEST_CASE("subset to composition bijection") {
    REQUIRE(subset_to_composition({2, 4, 7, 8}, 10).parts() == std::vector<int>{2, 2, 3, 1, 2});
    REQUIRE(subset_to_composition({}, 7).parts() == std::vector<int>{7});
    REQUIRE(subset_to_composition({1, 2, 3, 4}, 5).parts() == std::vector<int>{1, 1, 1, 1, 1});

    REQUIRE_THROWS_AS(subset_to_composition({5}, 5), precondition_error);
    REQUIRE_THROWS_AS(subset_to_composition({0}, 5), precondition_error);
    REQUIRE_THROWS_AS(subset_to_composition({2, 2}, 5), precondition_error);
}

TEST_CASE("bijection roundtrip up to n = 12") {
    for (int n = 1; n <= 12; ++n) {
        const SubsetMask full = n == 1 ? 0 : (SubsetMask(1) << (n - 1)) - 1;
        for (SubsetMask m = 0;; ++m) {
            Composition c = Composition::from_subset_mask(m, n);
            REQUIRE(c.subset_mask() == m);
            REQUIRE(subset_to_composition(composition_to_subset(c), n) == c);
            if (m == full) break;
        }
    }
}

TEST_CASE("refinement") {
    const Composition a112({1, 1, 2}), a22({2, 2}), a4({4});
    REQUIRE(refines(a112, a22));
    REQUIRE(refines(a22, a22));
    REQUIRE_FALSE(refines(a4, a22));
    REQUIRE_THROWS_AS(refines(a4, Composition({2, 3})), precondition_error);
}

TEST_CASE("refinement is a partial order") {
    for (int n = 2; n <= 8; ++n) {
        const auto comps = enumerate_compositions(n);
        std::size_t violations = 0;
        for (const auto& a : comps) {
            if (!refines(a, a)) ++violations;
            for (const auto& b : comps)
                if (refines(a, b) && refines(b, a) && !(a == b)) ++violations;
        }
        for (const auto& a : comps)
            for (const auto& b : comps) {
                if (!refines(a, b)) continue;
                for (const auto& c : comps)
                    if (refines(b, c) && !refines(a, c)) ++violations;
            }
        REQUIRE(violations == 0);
    }
}

TEST_CASE("equivalence") {
    REQUIRE(equivalent(Composition({1, 3}), Composition({3, 1})));
    REQUIRE(equivalent(Composition({2, 2}), Composition({2, 2})));
    REQUIRE_FALSE(equivalent(Composition({2, 2}), Composition({1, 3})));
    REQUIRE_FALSE(equivalent(Composition({3}), Composition({3, 1})));

    for (int n = 2; n <= 6; ++n) {
        const auto comps = enumerate_compositions(n);
        for (const auto& a : comps)
            for (const auto& b : comps) {
                REQUIRE(equivalent(a, b) == equivalent(b, a));
                REQUIRE(equivalent(a, b) == (sort_to_partition(a) == sort_to_partition(b)));
            }
    }
}

TEST_CASE("sort to partition") {
    REQUIRE(sort_to_partition(Composition({1, 3, 2})).parts() == std::vector<int>{3, 2, 1});
    REQUIRE(sort_to_partition(Composition({2, 2})).parts() == std::vector<int>{2, 2});
    REQUIRE(sort_to_partition(Composition({1, 1, 1, 1})).parts() ==
            std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("dominance") {
    REQUIRE(dominance_leq(Partition({2, 2}), Partition({3, 1})));
    REQUIRE_FALSE(dominance_leq(Partition({3, 1}), Partition({2, 2})));
    REQUIRE(dominance_leq(Partition({3, 1}), Partition({3, 1})));
    REQUIRE_THROWS_AS(dominance_leq(Partition({3}), Partition({2, 2})), precondition_error);

    for (int n = 2; n <= 8; ++n) {
        const auto parts = enumerate_partitions(n);
        for (const auto& a : parts)
            for (const auto& b : parts)
                if (dominance_leq(a, b) && dominance_leq(b, a)) REQUIRE(a == b);
        for (const auto& a : parts)
            for (const auto& b : parts)
                for (const auto& c : parts)
                    if (dominance_leq(a, b) && dominance_leq(b, c))
                        REQUIRE(dominance_leq(a, c));
    }
}

TEST_CASE("enumeration") {
    const auto c3 = enumerate_compositions(3);
    REQUIRE(c3.size() == 4);
    REQUIRE(c3.front().parts() == std::vector<int>{3});

    for (int n = 1; n <= 12; ++n)
        REQUIRE(enumerate_compositions(n).size() == std::size_t(1) << (n - 1));

    const auto p4 = enumerate_partitions(4);
    REQUIRE(p4.size() == 5);
    REQUIRE(p4[0].parts() == std::vector<int>{4});
    REQUIRE(p4[1].parts() == std::vector<int>{3, 1});
    REQUIRE(p4[2].parts() == std::vector<int>{2, 2});
    REQUIRE(p4[3].parts() == std::vector<int>{2, 1, 1});
    REQUIRE(p4[4].parts() == std::vector<int>{1, 1, 1, 1});

    REQUIRE(enumerate_compositions(1).size() == 1);
    REQUIRE(enumerate_partitions(1).size() == 1);

    REQUIRE_THROWS_AS(enumerate_compositions(21), budget_error);
}

TEST_CASE("partition order extends dominance") {
    for (int n = 2; n <= 8; ++n) {
        const auto parts = enumerate_partitions(n);
        const PartitionBefore before;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (i < j) REQUIRE(before(parts[i], parts[j]));
                // mu strictly dominated by lambda means mu is enumerated later
                if (i != j && dominance_leq(parts[i], parts[j])) REQUIRE(i > j);
            }
    }
}

TEST_CASE("rendering") {
    REQUIRE(Composition({2, 2, 3, 1, 2}).str() == "(2,2,3,1,2)");
    REQUIRE(Partition({3, 1}).str() == "(3,1)");
}
