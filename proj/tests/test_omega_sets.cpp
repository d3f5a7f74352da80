#include "idealab/omega_set.hpp"
#include "idealab/partition.hpp"
#include "idealab/rng.hpp"

#include <doctest.h>

using namespace idealab;

TEST_CASE("prefix agrees with each variant's semantics") {
    OmegaSet evens = named_program("evens");
    CHECK(evens.prefix(8) == FinSet{0, 2, 4, 6});

    OmegaSet cof = OmegaSet::cofinite({1, 3});
    CHECK(cof.prefix(5) == FinSet{0, 2, 4});

    // Blocks enumerated below 10: [1,2), [2,3), [4,6), [8,11).
    OmegaSet blocks = OmegaSet::block_union(
        std::vector<Block>{{1, 2}, {2, 3}, {4, 6}, {8, 11}});
    CHECK(blocks.prefix(10) == FinSet{1, 2, 4, 5, 8, 9});

    CHECK(OmegaSet::finite({7, 3, 3}).prefix(100) == FinSet{3, 7});
    CHECK(OmegaSet::finite({7, 3}).prefix(4) == FinSet{3});
}

TEST_CASE("prefix is a restriction: prefix(A,n) = prefix(A,m) /\\ [0,n)") {
    Rng rng(11);
    std::vector<OmegaSet> sets = {
        named_program("evens"),
        named_program("squares"),
        OmegaSet::cofinite({0, 5, 9, 100}),
        OmegaSet::finite({1, 2, 3, 500, 9999}),
        OmegaSet::block_union(std::vector<Block>{{2, 5}, {9, 12}, {100, 130}, {4000, 4100}}),
        named_program("hash_dense", {42, 2, 3}),
    };
    for (const auto& a : sets) {
        for (int trial = 0; trial < 40; ++trial) {
            Nat m = rng.below(10000) + 1;
            Nat n = rng.below(m + 1);
            FinSet big = a.prefix(m);
            FinSet small = a.prefix(n);
            FinSet clipped;
            for (Nat x : big)
                if (x < n) clipped.push_back(x);
            CHECK(small == clipped);
        }
    }
}

TEST_CASE("block-union prefix equals the clipped union of its blocks") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Block> blocks;
        Nat pos = rng.below(5);
        for (int b = 0; b < 8; ++b) {
            Nat lo = pos + rng.below(20);
            Nat hi = lo + 1 + rng.below(15);
            blocks.push_back({lo, hi});
            pos = hi;
        }
        OmegaSet a = OmegaSet::block_union(blocks);
        Nat horizon = rng.below(300);
        FinSet expected;
        for (const auto& b : blocks)
            for (Nat x = b.lo; x < b.hi; ++x)
                if (x < horizon) expected.push_back(x);
        CHECK(a.prefix(horizon) == expected);
        for (Nat x = 0; x < horizon; ++x) {
            bool in = false;
            for (const auto& b : blocks) in = in || (b.lo <= x && x < b.hi);
            CHECK(a.contains(x) == in);
        }
    }
}

TEST_CASE("block streams out of order are rejected lazily") {
    OmegaSet bad = OmegaSet::block_union(std::vector<Block>{{5, 8}, {2, 3}});
    CHECK_THROWS_AS(bad.prefix(10), std::invalid_argument);
    OmegaSet degenerate = OmegaSet::block_union(std::vector<Block>{{5, 5}});
    CHECK_THROWS_AS(degenerate.prefix(10), std::invalid_argument);
}

TEST_CASE("complement flips membership") {
    OmegaSet f = OmegaSet::finite({1, 4});
    CHECK(f.complement().kind() == OmegaSet::Kind::Cofinite);
    CHECK(f.complement().prefix(6) == FinSet{0, 2, 3, 5});
    OmegaSet sq = named_program("squares");
    CHECK_FALSE(sq.complement().contains(16));
    CHECK(sq.complement().contains(17));
}

TEST_CASE("refinement_check verifies residue schemes and falsifies broken ones") {
    PartitionScheme residue = PartitionScheme::residue(2);
    CHECK(refinement_check(residue, 4, 100).verified);

    // Level-2 labels ignore level 1: label by n mod 3 instead of refining mod 2.
    PartitionScheme broken(
        [](std::size_t l) {
            FinitePartition p;
            p.level = l;
            if (l < 2) {
                p.cell_count = l == 0 ? 1 : 2;
                p.label = [l](Nat n) { return l == 0 ? std::size_t{0} : static_cast<std::size_t>(n % 2); };
            } else {
                p.cell_count = 3;
                p.label = [](Nat n) { return static_cast<std::size_t>(n % 3); };
            }
            return p;
        },
        [](std::size_t l, std::size_t child) -> std::size_t {
            if (l == 1) return 0;
            return child % 2;
        });
    auto verdict = refinement_check(broken, 3, 10);
    CHECK_FALSE(verdict.verified);
    // Replay the witness against the scheme.
    auto parent = broken.level(verdict.counterexample_level);
    auto child = broken.level(verdict.counterexample_level + 1);
    CHECK(broken.parent_cell(verdict.counterexample_level + 1,
                             child.label(verdict.counterexample_n)) !=
          parent.label(verdict.counterexample_n));

    // A single level is vacuously consistent.
    CHECK(refinement_check(broken, 1, 50).verified);
}

TEST_CASE("chain_enumerate counts bottom cells and satisfies the chain invariant") {
    PartitionScheme residue = PartitionScheme::residue(2);
    CHECK(chain_enumerate(residue, 2).size() == 2);
    CHECK(chain_enumerate(residue, 3).size() == 4);
    CHECK(chain_enumerate(PartitionScheme::trivial(), 5).size() == 1);

    for (std::size_t depth = 1; depth <= 4; ++depth) {
        auto chains = chain_enumerate(residue, depth);
        CHECK(chains.size() == residue.level(depth - 1).cell_count);
        for (const auto& c : chains) CHECK(chain_valid(residue, c));
    }
}
