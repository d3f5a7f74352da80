#include "idealab/orders.hpp"
#include "idealab/rng.hpp"

#include <doctest.h>

using namespace idealab;

namespace {

MeasureBlockStreamFn uniform_mass_blocks(bool square_growth) {
    // Shared supports for both witnesses; masses n*2^n+1 resp. n^2*2^n+1.
    return [square_growth](std::size_t n) -> std::optional<MeasureBlock> {
        if (n >= 16) return std::nullopt;
        Nat size = Nat{1} << n;
        Nat start = size - 1;
        Rat mass = square_growth ? Rat(BigInt(n) * BigInt(n)) * pow2(static_cast<unsigned>(n)) + 1
                                 : Rat(BigInt(n)) * pow2(static_cast<unsigned>(n)) + 1;
        MeasureBlock b;
        Rat w = mass * pow2_inv(static_cast<unsigned>(n));
        for (Nat i = 0; i < size; ++i) {
            b.support.push_back(start + i);
            b.weights.push_back(w);
        }
        return b;
    };
}

} // namespace

TEST_CASE("catalog generators certify membership at the default budget") {
    for (const auto& handle : standard_catalog()) {
        CHECK(handle.generators().size() >= 5);
        for (const auto& [desc, gen] : handle.generators()) {
            auto cert = handle.member(gen, Budget{});
            INFO(handle.name(), " / ", desc);
            CHECK(cert_is_positive(cert.kind));
        }
    }
}

TEST_CASE("identity reductions pass for every catalogued ideal") {
    for (const auto& handle : standard_catalog()) {
        auto rep = katetov_verify(handle, handle, KatetovMap::identity(), Budget{});
        INFO(handle.name());
        CHECK(rep.overall == KatetovReport::Overall::EvidencePositive);
    }
}

TEST_CASE("identity reductions between different ideals") {
    IdealHandle z = catalog_ideal("density_zero");
    IdealHandle fin = catalog_ideal("fin");
    IdealHandle zlog = catalog_ideal("log_density_zero");

    // Density-zero generators are infinite, so finite-set membership falsifies.
    auto down = katetov_verify(z, fin, KatetovMap::identity(), Budget{});
    CHECK(down.overall == KatetovReport::Overall::Falsified);

    // Density-zero prefixes carry vanishing logarithmic ratios.
    auto across = katetov_verify(z, zlog, KatetovMap::identity(), Budget{});
    CHECK(across.overall == KatetovReport::Overall::EvidencePositive);
}

TEST_CASE("direct sums conjoin component certificates") {
    FilterHandle fr = dual_filter(catalog_ideal("fin"));
    OmegaSet evens = named_program("evens");
    auto embed_even = [](Nat n) { return 2 * n; };
    auto embed_odd = [](Nat n) { return 2 * n + 1; };

    // The whole space belongs to any sum of filters.
    auto whole = direct_sum_eval(fr, fr, evens, embed_even, embed_odd, OmegaSet::all(), Budget{});
    CHECK(whole.overall == DirectSumVerdict::Overall::Member);

    // The even numbers trace to the empty set on the odd part: falsified.
    auto half = direct_sum_eval(fr, fr, evens, embed_even, embed_odd, evens, Budget{});
    CHECK(half.overall == DirectSumVerdict::Overall::Falsified);

    // Cofinite sets trace to cofinite sets on both parts.
    auto cof = direct_sum_eval(fr, fr, evens, embed_even, embed_odd,
                               OmegaSet::cofinite({0, 1, 2, 3, 4, 5}), Budget{});
    CHECK(cof.overall == DirectSumVerdict::Overall::Member);

    // Monotone: enlarging a member keeps membership (sampled).
    FilterHandle sum = direct_sum(fr, fr, evens, embed_even, embed_odd);
    Rng rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet excluded = rng.subset(64, 1, 4);
        OmegaSet member = OmegaSet::cofinite(excluded);
        REQUIRE(cert_is_positive(sum.member(member, Budget{}).kind));
        FinSet shrunk;
        for (Nat x : excluded)
            if (rng.below(2)) shrunk.push_back(x);
        OmegaSet superset = OmegaSet::cofinite(shrunk);
        CHECK(cert_is_positive(sum.member(superset, Budget{}).kind));
    }
}

TEST_CASE("bit slices split random infinite sets over the finite ideal") {
    IdealHandle fin = catalog_ideal("fin");
    auto family = bit_slice_family(12);
    std::vector<OmegaSet> tests;
    Rng rng(79);
    for (int t = 0; t < 20; ++t) tests.push_back(named_program("hash_dense", {rng.next(), 2, 3}));
    auto rep = splitting_check(family, fin, tests, Budget{});
    CHECK(rep.all_split());
    for (const auto& item : rep.items) {
        CHECK(item.precondition_ok);
        CHECK(cert_is_negative(item.left.kind));
        CHECK(cert_is_negative(item.right.kind));
    }

    // A family that misses the test entirely cannot split it.
    auto miss = splitting_check({named_program("evens")}, fin, {named_program("odds")}, Budget{});
    CHECK_FALSE(miss.items[0].split);

    // Against the density ideal, the evens split along bit 1 with positive
    // lower-density evidence on both halves.
    IdealHandle z = catalog_ideal("density_zero");
    auto dens = splitting_check(family, z, {named_program("evens")}, Budget{});
    REQUIRE(dens.items[0].split);
    CHECK(dens.items[0].splitter == 1);
}

TEST_CASE("eventual dominance evidence") {
    WeightFn linear = weight_by_name("linear");
    WeightFn square{"square", [](Nat n) { return Rat(BigInt(n) * BigInt(n)); }};
    auto d = dominance(linear, square, 1 << 10);
    CHECK(d.found);
    CHECK(d.from == 0);

    auto self = dominance(linear, linear, 1 << 10);
    CHECK(self.found);
    CHECK(self.from == 0);

    WeightFn shifted{"n+1", [](Nat n) { return Rat(BigInt(n) + 1); }};
    auto no = dominance(shifted, linear, 1 << 10);
    CHECK_FALSE(no.found);

    // n+1 <= n^2 from 2 on.
    auto late = dominance(shifted, square, 1 << 10);
    CHECK(late.found);
    CHECK(late.from == 2);
}

TEST_CASE("dominance is transitive on sampled positive triples") {
    Rng rng(83);
    int checked = 0;
    for (int trial = 0; trial < 1000 && checked < 50; ++trial) {
        auto mk = [&](Nat slope, Nat offset) {
            return WeightFn{"affine", [slope, offset](Nat n) {
                                return Rat(BigInt(slope) * BigInt(n) + BigInt(offset));
                            }};
        };
        WeightFn f = mk(rng.below(4), rng.below(40));
        WeightFn g = mk(rng.below(4), rng.below(40));
        WeightFn h = mk(rng.below(4), rng.below(40));
        Nat horizon = 512;
        auto fg = dominance(f, g, horizon);
        auto gh = dominance(g, h, horizon);
        if (!fg.found || !gh.found) continue;
        ++checked;
        auto fh = dominance(f, h, horizon);
        CHECK(fh.found);
    }
    CHECK(checked == 50);
}

TEST_CASE("two witnesses: dominance matrix and inclusion bounds") {
    std::vector<MeasureBlockStreamFn> witnesses{uniform_mass_blocks(false), uniform_mass_blocks(true)};

    // Generators: full supports of early blocks (single-block sums are exact
    // and finite).
    auto mat0 = materialize_blocks(witnesses[0], 8);
    std::vector<std::vector<std::pair<std::string, OmegaSet>>> gens(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t b = 2; b <= 4; ++b) {
            gens[i].emplace_back("support of block " + std::to_string(b),
                                 OmegaSet::finite(mat0[b].support));
        }
    }

    auto rep = tukey_demo(witnesses, gens, 8, 1 << 12, 32);
    REQUIRE(rep.success);
    REQUIRE(rep.matrix.size() == 2);

    // Shared supports: the squared-mass weights dominate from the start.
    CHECK(rep.matrix[0][0].found);
    CHECK(rep.matrix[0][0].from == 0);
    CHECK(rep.matrix[0][1].found);
    CHECK(rep.matrix[0][1].from == 0);
    CHECK(rep.matrix[1][0].found);
    CHECK(rep.matrix[1][0].from > 0);

    // Inclusion bounds: a full selected support sums to exactly 2^-k * mass.
    for (const auto& inc : rep.inclusions) {
        CHECK(inc.bound > 0);
    }
    const auto& ext = rep.extensions[0];
    // Block 2 is selection k = 2 here (selected indices are 1, 2, 3, ...).
    REQUIRE(ext.selected.size() >= 2);
    CHECK(ext.selected[1] == 2);
    Rat expected = pow2_inv(2) * (Rat(2) * pow2(2) + 1);
    CHECK(rep.inclusions[0].bound == expected);

    // A single witness gives the reflexive 1x1 matrix.
    auto solo = tukey_demo({witnesses[0]}, {gens[0]}, 6, 1 << 12, 32);
    REQUIRE(solo.success);
    CHECK(solo.matrix[0][0].found);
    CHECK(solo.matrix[0][0].from == 0);
}
