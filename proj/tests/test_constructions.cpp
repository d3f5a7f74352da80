#include "idealab/constructions.hpp"
#include "idealab/rng.hpp"

#include <doctest.h>

using namespace idealab;

namespace {

// Uniform block n: 2^n fresh points carrying total mass n*2^n + 1.
MeasureBlockStreamFn mass_n2n_plus_1_blocks() {
    return [](std::size_t n) -> std::optional<MeasureBlock> {
        if (n >= 24) return std::nullopt;
        Nat size = Nat{1} << n;
        Nat start = size - 1;
        MeasureBlock b;
        Rat w = (Rat(BigInt(n)) * pow2(static_cast<unsigned>(n)) + 1) * pow2_inv(static_cast<unsigned>(n));
        for (Nat i = 0; i < size; ++i) {
            b.support.push_back(start + i);
            b.weights.push_back(w);
        }
        return b;
    };
}

} // namespace

TEST_CASE("summable extraction: selections, block sums, and the additivity identity") {
    auto blocks = mass_n2n_plus_1_blocks();
    auto res = summable_extension(blocks, 10, 64);
    REQUIRE(res.success);

    // Block mass n*2^n + 1 first beats k*2^k at n = k.
    for (std::size_t k = 1; k <= 10; ++k) {
        CHECK(res.selected[k - 1] == k);
        CHECK(res.masses[k - 1] > res.thresholds[k - 1]);  // strict, no tolerance
        CHECK(res.per_block_sums[k - 1] > Rat(BigInt(k)));
    }
    CHECK(res.per_block_sums[0] == Rat(3, 2));

    // f vanishes off the selected supports.
    CHECK(res.f_at(0) == 0);  // block 0 was never selected

    // Exact exchange of finite sums on random finite sets.
    auto mat = materialize_blocks(blocks, 16);
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet f = rng.subset(2000, 1, 7);
        Rat direct = 0;
        for (Nat x : f) direct += res.f_at(x);
        CHECK(direct == res.rho_eval(f, mat));
    }

    // Bounded blocks never reach the thresholds.
    auto bounded = [](std::size_t n) -> std::optional<MeasureBlock> {
        if (n >= 30) return std::nullopt;
        MeasureBlock b;
        b.support = {10 * n};
        b.weights = {Rat(1)};
        return b;
    };
    auto fail = summable_extension(bounded, 3, 29);
    CHECK_FALSE(fail.success);
}

TEST_CASE("interval rescaling of the counting measure") {
    auto res = fin_to_exh(make_counting(), 11, 1 << 20);
    REQUIRE(res.success);
    // Minimal cuts: +max(n^2, 1) each step.
    REQUIRE(res.cuts.size() == 12);
    CHECK(res.cuts[0] == 0);
    CHECK(res.cuts[1] == 1);
    CHECK(res.cuts[2] == 2);
    CHECK(res.cuts[3] == 6);
    CHECK(res.cuts[4] == 15);
    CHECK(res.cuts[5] == 31);

    // psi_n(X_n) = n exactly for the counting measure.
    for (std::size_t n = 1; n <= 10; ++n) {
        FinSet xn;
        for (Nat x = res.cuts[n]; x < res.cuts[n + 1]; ++x) xn.push_back(x);
        CHECK(res.psi.eval(xn) == Rat(BigInt(n)));
        CHECK(res.psi.eval(xn) >= Rat(BigInt(n)));
    }
    CHECK(res.psi.eval({}) == 0);

    // The rescaled family is a genuine submeasure.
    Rng rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        FinSet g = rng.subset(100, 1, 3);
        FinSet f;
        for (Nat x : g)
            if (rng.below(2)) f.push_back(x);
        CHECK(res.psi.eval(f) <= res.psi.eval(g));
        FinSet other = rng.subset(100, 1, 4);
        CHECK(res.psi.eval(fs_union(g, other)) <= res.psi.eval(g) + res.psi.eval(other));
    }

    // Certified-bound sets become tail-vanishing under psi.
    FinSet a{3, 7};  // counting value 2
    auto cut = res.cut_for_bound(Rat(2), Rat(1, 2));
    REQUIRE(cut.has_value());
    CHECK(*cut == res.cuts[5]);
    auto cert = exh_certificate(res.psi, OmegaSet::finite(a), Rat(1, 2), {{*cut, 1 << 12}});
    CHECK(cert.kind == CertKind::ExhYes);

    // Beyond the built depth there is no usable cut.
    CHECK_FALSE(res.cut_for_bound(Rat(100), Rat(1, 100)).has_value());

    // Bounded measures exhaust the budget.
    auto fail = fin_to_exh(make_asymptotic_density(), 4, 1 << 12);
    CHECK_FALSE(fail.success);
}

TEST_CASE("partition selection walks the scheme greedily") {
    auto res = partition_unbounded_selection(make_counting(), PartitionScheme::residue(2), 3, 100);
    REQUIRE(res.success);
    CHECK(res.chain.cells == std::vector<std::size_t>{0, 0, 0});
    REQUIRE(res.sets.size() == 3);
    CHECK(res.sets[0] == FinSet{0});
    CHECK(res.sets[1] == FinSet{2, 4});
    CHECK(res.sets[2] == FinSet{8, 12, 16});
    for (std::size_t n = 0; n < 3; ++n) CHECK(res.values[n] >= Rat(BigInt(n) + 1));
    CHECK(fs_disjoint(res.sets[0], res.sets[1]));
    CHECK(fs_disjoint(res.sets[1], res.sets[2]));

    // The trivial scheme hands out the next fresh naturals.
    auto triv = partition_unbounded_selection(make_counting(), PartitionScheme::trivial(), 3, 100);
    REQUIRE(triv.success);
    CHECK(triv.sets[0] == FinSet{0});
    CHECK(triv.sets[1] == FinSet{1, 2});
    CHECK(triv.sets[2] == FinSet{3, 4, 5});

    // A bounded family stalls once the threshold passes its bound.
    auto fail = partition_unbounded_selection(make_asymptotic_density(), PartitionScheme::residue(2),
                                              3, 1 << 12);
    CHECK_FALSE(fail.success);
    CHECK(fail.failed_level == 1);
}

TEST_CASE("sign selection picks the growing side") {
    std::vector<OmegaSet> evens(4, named_program("evens"));
    auto res = sign_scheme_selection(make_counting(), evens, 4, 100);
    REQUIRE(res.success);
    CHECK(res.signs == std::vector<int>{1, 1, 1, 1});
    CHECK(res.sets[0].empty());          // threshold 0
    CHECK(res.sets[1] == FinSet{0});     // first fresh even
    CHECK(res.sets[2] == FinSet{2, 4});
    CHECK(res.sets[3] == FinSet{6, 8, 10});
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(res.values[n] >= Rat(BigInt(n)));
        for (Nat x : res.sets[n]) CHECK(x % 2 == 0);
    }

    // An empty first set forces the negative side.
    std::vector<OmegaSet> with_empty{OmegaSet::none(), named_program("evens")};
    auto forced = sign_scheme_selection(make_counting(), with_empty, 2, 100);
    REQUIRE(forced.success);
    CHECK(forced.signs[0] == -1);

    // Bounded submeasures fail once the threshold exceeds the bound.
    auto fail = sign_scheme_selection(make_asymptotic_density(), evens, 4, 1 << 12);
    CHECK_FALSE(fail.success);
}

TEST_CASE("selection transcripts replay to identical rationals") {
    Submeasure counting = make_counting();

    auto part = partition_unbounded_selection(counting, PartitionScheme::residue(2), 4, 200);
    REQUIRE(part.success);
    for (std::size_t n = 0; n < part.sets.size(); ++n)
        CHECK(counting.eval(part.sets[n]) == part.values[n]);
    for (std::size_t l = 0; l < part.probe_values.size(); ++l) {
        OmegaSet cell = PartitionScheme::residue(2).level(l).cell(part.chain.cells[l]);
        CHECK(counting.eval(cell.prefix(200)) == part.probe_values[l]);
    }

    std::vector<OmegaSet> sets(4, named_program("evens"));
    auto sign = sign_scheme_selection(counting, sets, 4, 200);
    REQUIRE(sign.success);
    for (std::size_t n = 0; n < sign.sets.size(); ++n)
        CHECK(counting.eval(sign.sets[n]) == sign.values[n]);

    auto blocks = mass_n2n_plus_1_blocks();
    auto ext = summable_extension(blocks, 6, 32);
    REQUIRE(ext.success);
    auto mat = materialize_blocks(blocks, 10);
    for (std::size_t k = 1; k <= ext.selected.size(); ++k) {
        const MeasureBlock& b = mat[ext.selected[k - 1]];
        CHECK(b.mass() == ext.masses[k - 1]);
        Rat block_sum = 0;
        for (Nat x : b.support) block_sum += ext.f_at(x);
        CHECK(block_sum == ext.per_block_sums[k - 1]);
    }
}

TEST_CASE("chain decomposition splits a set into finite pieces") {
    // Chain A_m = omega minus [0, m): differences are singletons.
    std::vector<OmegaSet> chain;
    for (Nat m = 0; m <= 10; ++m) {
        FinSet head;
        for (Nat x = 0; x < m; ++x) head.push_back(x);
        chain.push_back(OmegaSet::cofinite(head));
    }
    OmegaSet e = OmegaSet::finite({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto dec = snpp_decomposition(e, chain, 50);
    CHECK(dec.partition_ok);
    for (Nat m = 0; m < 10; ++m) CHECK(dec.pieces[m] == FinSet{m});
    for (std::size_t m = 10; m < dec.pieces.size(); ++m) CHECK(dec.pieces[m].empty());

    // The empty set decomposes into empty pieces.
    auto empty = snpp_decomposition(OmegaSet::none(), chain, 50);
    CHECK(empty.partition_ok);
    for (const auto& p : empty.pieces) CHECK(p.empty());

    // Random chains and sets keep the partition identity at every horizon.
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<OmegaSet> rc{OmegaSet::all()};
        for (int d = 0; d < 4; ++d)
            rc.push_back(omega_intersect(rc.back(),
                                         named_program("hash_dense", {rng.next(), 3, 4})));
        OmegaSet re = named_program("hash_dense", {rng.next(), 1, 2});
        Nat horizon = (trial % 10 == 0) ? 10000 : 1024;
        auto d = snpp_decomposition(re, rc, horizon);
        CHECK(d.partition_ok);
        for (const auto& piece : d.pieces) {
            for (Nat x : piece) CHECK(re.contains(x));
        }
    }
}
