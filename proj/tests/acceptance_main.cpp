// Acceptance suite: runs every top-level criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fails.

#include "idealab/constructions.hpp"
#include "idealab/hypergraph.hpp"
#include "idealab/json_io.hpp"
#include "idealab/measures.hpp"
#include "idealab/orders.hpp"
#include "idealab/pipeline.hpp"
#include "idealab/rng.hpp"
#include "idealab/submeasure.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

using namespace idealab;

namespace {

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

HypergraphBlockStreamFn aligned_blocks() {
    return [](std::size_t k) -> std::optional<HypergraphBlock> {
        if (k >= 24) return std::nullopt;
        Nat size = Nat{1} << k;
        Nat start = size - 1;
        HypergraphBlock b;
        for (Nat i = 0; i < size; ++i) b.ground.push_back(64 * (start + i));
        std::vector<std::size_t> edge(static_cast<std::size_t>(size));
        for (std::size_t i = 0; i < edge.size(); ++i) edge[i] = i;
        b.graph = Hypergraph(static_cast<std::size_t>(size), {edge});
        return b;
    };
}

// Hypergraph config with genuine multi-edge graphs on explicit grounds.
Submeasure kneser_block_submeasure() {
    HypergraphBlock petersen;
    for (Nat i = 0; i < 10; ++i) petersen.ground.push_back(i);
    petersen.graph = kneser_generate(5, 2, 2);
    HypergraphBlock matchings;
    for (Nat i = 0; i < 15; ++i) matchings.ground.push_back(20 + i);
    matchings.graph = kneser_generate(6, 2, 3);
    return hypergraph_submeasure({petersen, matchings}, "kneser-blocks");
}

bool criterion1_axioms(std::string& detail) {
    std::vector<std::pair<std::string, Submeasure>> zoo;
    zoo.emplace_back("asymptotic_density", make_asymptotic_density());
    zoo.emplace_back("erdos_ulam_reciprocal", make_erdos_ulam(weight_by_name("reciprocal")));
    zoo.emplace_back("summable_reciprocal", make_summable(weight_by_name("reciprocal")));
    zoo.emplace_back("trace_null", make_trace_null());
    {
        auto sel = adl_select(adl_base_blocks(), 4, 32);
        if (!sel.success) {
            detail = "selection for the hypergraph family failed";
            return false;
        }
        zoo.emplace_back("hypergraph_adl", adl_ideal(sel.config, OmegaSet::all()));
    }
    zoo.emplace_back("hypergraph_aligned", hypergraph_submeasure(aligned_blocks(), "aligned"));
    zoo.emplace_back("hypergraph_kneser", kneser_block_submeasure());
    zoo.emplace_back("density_mass_k", make_density(preset_block_stream("mass_k"), "mass_k"));
    zoo.emplace_back("density_mass_n2n",
                     make_density(preset_block_stream("mass_n2n_plus_1"), "mass_n2n"));

    Rng rng(2026);
    const Nat universe = 256;
    for (const auto& [name, phi] : zoo) {
        if (phi.eval({}) != 0) {
            detail = name + ": empty set has nonzero value";
            return false;
        }
        for (int trial = 0; trial < 10000; ++trial) {
            FinSet g = rng.subset(universe, 1, 6);
            FinSet f;
            for (Nat x : g)
                if (rng.below(2)) f.push_back(x);
            FinSet other = rng.subset(universe, 1, 7);
            Rat vf = phi.eval(f), vg = phi.eval(g), vo = phi.eval(other);
            if (vf > vg) {
                detail = name + ": monotonicity violated at trial " + std::to_string(trial);
                return false;
            }
            if (phi.eval(fs_union(g, other)) > vg + vo) {
                detail = name + ": subadditivity violated at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = std::to_string(zoo.size()) + " families x 10000 checks, zero violations";
    return true;
}

bool criterion2_phid_spot(std::string& detail) {
    Submeasure phi = make_asymptotic_density();
    OmegaSet evens = named_program("evens");
    for (unsigned k = 2; k <= 20; ++k) {
        if (eval_prefix(phi, evens, Nat{1} << k) != Rat(1, 2)) {
            detail = "evens at horizon 2^" + std::to_string(k) + " missed 1/2";
            return false;
        }
    }
    if (eval_prefix(phi, OmegaSet::all(), 8) != 1) {
        detail = "full space at horizon 8 missed 1";
        return false;
    }
    detail = "evens at 2^k equal 1/2 for k=2..20; omega at 8 equals 1 (exact)";
    return true;
}

bool criterion3_nonpath(std::string& detail) {
    Submeasure dens = make_density(preset_block_stream("mass_k"), "mass_k");
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet f = rng.pick(120, 1 + rng.below(12));
        Rat gap = nonpath_gap(dens, f);
        if (gap != 0) {
            detail = "density gap nonzero at trial " + std::to_string(trial);
            return false;
        }
    }
    Submeasure path = make_table(
        {0, 1, 2},
        [](const FinSet& f) {
            if (f.empty()) return Rat(0);
            return f.size() <= 2 ? Rat(1) : Rat(2);
        },
        "pathological-3pt");
    Rat fixture = nonpath_gap(path, {0, 1, 2});
    if (fixture != Rat(1, 2)) {
        detail = "3-point fixture gap is " + rat_str(fixture) + ", wanted 1/2";
        return false;
    }
    detail = "100 density gaps exactly 0; pathological fixture exactly 1/2";
    return true;
}

bool criterion4_kneser(std::string& detail) {
    std::size_t c5 = chromatic_exact(kneser_generate(5, 2, 2));
    std::size_t c6 = chromatic_exact(kneser_generate(6, 2, 2));
    if (c5 != 3 || c6 != 4) {
        detail = "chromatic numbers " + std::to_string(c5) + ", " + std::to_string(c6);
        return false;
    }
    if (kneser_chromatic_lower_bound(5, 2, 2) != 3 || kneser_chromatic_lower_bound(6, 2, 2) != 4) {
        detail = "closed-form bound disagrees with the oracle";
        return false;
    }
    detail = "exact chromatic numbers 3 and 4 agree with the closed form";
    return true;
}

bool criterion5_adl_inequality(std::string& detail) {
    auto sel = adl_select(adl_base_blocks(), 5, 64);
    if (!sel.success) {
        detail = sel.diagnostic;
        return false;
    }
    Nat earlier = 0;
    for (std::size_t k = 0; k < sel.config.selected.size(); ++k) {
        const auto& b = sel.config.selected_block(k);
        for (const auto& e : b.graph.edges()) {
            if (!(e.size() > k * earlier)) {
                detail = "edge-size inequality failed at position " + std::to_string(k);
                return false;
            }
        }
        earlier += b.ground.size();
    }
    std::ostringstream os;
    os << "selected indices";
    for (auto n : sel.config.selected) os << " " << n;
    os << "; inequality exact at every edge";
    detail = os.str();
    return true;
}

bool criterion6_npp(std::string& detail) {
    std::vector<std::size_t> m_set{0, 1, 2, 3, 4, 5};
    auto w = npp_failure_witness(aligned_blocks(), PartitionScheme::residue(2), 6, m_set, 64);
    if (!w.success) {
        detail = w.diagnostic;
        return false;
    }
    for (std::size_t i = 0; i < w.ratios.size(); ++i) {
        if (w.ratios[i] != 1) {
            detail = "ratio at selection " + std::to_string(i) + " is " + rat_str(w.ratios[i]);
            return false;
        }
    }
    // Edges sit inside their cells, extensionally.
    for (std::size_t k = 0; k < w.edge_grounds.size(); ++k) {
        auto part = PartitionScheme::residue(2).level(k);
        for (Nat x : w.edge_grounds[k]) {
            if (part.label(x) != w.chain.cells[k]) {
                detail = "edge escaped its cell at level " + std::to_string(k);
                return false;
            }
        }
    }
    detail = "depth-6 witness found; all " + std::to_string(w.ratios.size()) +
             " block ratios exactly 1";
    return true;
}

bool criterion7_disjointify(std::string& detail) {
    MeasureSeqFn seq = [](std::size_t n) {
        return delta_pair_witness([](std::size_t i) { return static_cast<Nat>(i); }, n);
    };
    const std::size_t pairs = 21;  // stage-2 outputs k = 0..20
    auto stage1 = disjointify_stage1(seq, 2 * pairs, default_schedule_N(), default_schedule_M(),
                                     200000);
    if (!stage1.success) {
        detail = "stage 1: " + stage1.diagnostic;
        return false;
    }

    Rng rng(7);
    for (const auto& item : stage1.items) {
        for (int trial = 0; trial < 50; ++trial) {
            FinSet base = rng.subset(120, 1, 2);
            ClopenCode a = rng.below(2) ? ClopenCode::small(OmegaSet::finite(base))
                                        : ClopenCode::cosmall(OmegaSet::finite(base));
            if (!stage1_pointwise_bound_ok(item, a)) {
                detail = "stage-1 pointwise bound failed at k=" + std::to_string(item.k);
                return false;
            }
        }
    }

    std::vector<FinMeasure> rho;
    std::vector<Rat> floors;
    for (const auto& item : stage1.items) {
        rho.push_back(item.nu);
        floors.push_back(Rat(BigInt(item.k) + 1));
    }
    auto stage2 = disjointify_stage2(rho, floors, CaseRule::Auto);
    if (!stage2.success) {
        detail = "stage 2: " + stage2.diagnostic;
        return false;
    }
    if (stage2.items.size() < pairs) {
        detail = "stage 2 produced only " + std::to_string(stage2.items.size()) + " outputs";
        return false;
    }

    FinSet seen;
    for (const auto& item : stage2.items) {
        if (item.nu.p_weight() != 0) {
            detail = "p-weight nonzero after stage 2 at k=" + std::to_string(item.k);
            return false;
        }
        FinSet supp = item.nu.omega_support();
        if (!fs_disjoint(seen, supp)) {
            detail = "supports overlap at k=" + std::to_string(item.k);
            return false;
        }
        seen = fs_union(seen, supp);
        if (item.k <= 20 && !(item.norm > Rat(BigInt(item.k) + 1))) {
            detail = "norm floor k+1 failed at k=" + std::to_string(item.k);
            return false;
        }
    }
    detail = "21 disjointified outputs: supports disjoint, p-weight 0, norms exceed k+1, "
             "pointwise bounds hold on 50 clopens per stage-1 step (case " +
             std::to_string(stage2.case_used) + ")";
    return true;
}

bool criterion8_normalize(std::string& detail) {
    MeasureSeqFn seq = [](std::size_t n) {
        return delta_pair_witness([](std::size_t i) { return static_cast<Nat>(i); }, n);
    };
    auto stage1 = disjointify_stage1(seq, 42, default_schedule_N(), default_schedule_M(), 200000);
    if (!stage1.success) {
        detail = "pipeline input unavailable";
        return false;
    }
    std::vector<FinMeasure> rho;
    std::vector<Rat> floors;
    for (const auto& item : stage1.items) {
        rho.push_back(item.nu);
        floors.push_back(Rat(BigInt(item.k) + 1));
    }
    auto stage2 = disjointify_stage2(rho, floors, CaseRule::Auto);
    if (!stage2.success || stage2.items.size() < 21) {
        detail = "pipeline input unavailable";
        return false;
    }
    std::vector<FinMeasure> inputs;
    for (const auto& item : stage2.items) inputs.push_back(item.nu);
    auto out = anti_grothendieck_normalize(inputs);
    for (std::size_t n = 0; n < out.size() && n <= 20; ++n) {
        if (out[n].normalized.norm() != 1) {
            detail = "norm not exactly 1 at n=" + std::to_string(n);
            return false;
        }
        if (!(rat_abs(out[n].value) > Rat(1, 3))) {
            detail = "witness clopen value at n=" + std::to_string(n) + " is " +
                     rat_str(out[n].value);
            return false;
        }
    }
    detail = "21 normalized outputs with unit norm and witness values above 1/3";
    return true;
}

bool criterion9_extension(std::string& detail) {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<Nat, Rat>> weights;
        std::size_t count = rng.below(7);
        for (std::size_t i = 0; i < count; ++i)
            weights.emplace_back(rng.below(24),
                                 Rat(static_cast<long long>(rng.below(17)) - 8, 1 + rng.below(5)));
        WeightStream mu = WeightStream::finitely_supported(std::move(weights));
        Rat alpha(static_cast<long long>(rng.below(13)) - 6);
        auto rep = extension_bounds_check(mu, alpha, {4, 8, 16, 32});
        if (!rep.sandwich_ok) {
            detail = "sandwich failed at trial " + std::to_string(trial);
            return false;
        }
        if (!rep.monotone_ok) {
            detail = "horizon monotonicity failed at trial " + std::to_string(trial);
            return false;
        }
        if (!rep.decomposition_ok) {
            detail = "norm decomposition failed at trial " + std::to_string(trial);
            return false;
        }
    }
    auto fixture = extension_bounds_check(WeightStream::geometric_half(), Rat(0), {4, 8, 12});
    if (!(fixture.horizon_norm > Rat(2) - pow2_inv(10))) {
        detail = "geometric fixture norm " + rat_str(fixture.horizon_norm) +
                 " does not exceed 2 - 2^-10 at horizon 12";
        return false;
    }
    detail = "100 sandwiches with monotone horizons; fixture norm " +
             rat_str(fixture.horizon_norm) + " > 2 - 2^-10";
    return true;
}

bool criterion10_summable_extension(std::string& detail) {
    auto blocks = preset_block_stream("mass_n2n_plus_1");
    auto res = summable_extension(blocks, 10, 64);
    if (!res.success) {
        detail = res.diagnostic;
        return false;
    }
    for (std::size_t k = 1; k <= 10; ++k) {
        if (!(res.per_block_sums[k - 1] > Rat(BigInt(k)))) {
            detail = "per-block sum at k=" + std::to_string(k) + " not above k";
            return false;
        }
    }
    auto mat = materialize_blocks(blocks, 16);
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet f = rng.subset(3000, 1, 9);
        Rat direct = 0;
        for (Nat x : f) direct += res.f_at(x);
        if (direct != res.rho_eval(f, mat)) {
            detail = "additivity identity failed at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "identity exact on 100 random sets; block sums strictly exceed k for k <= 10";
    return true;
}

bool criterion11_fin_to_exh(std::string& detail) {
    auto res = fin_to_exh(make_counting(), 110, 1 << 24);
    if (!res.success) {
        detail = res.diagnostic;
        return false;
    }
    for (std::size_t n = 1; n <= 10; ++n) {
        FinSet xn;
        for (Nat x = res.cuts[n]; x < res.cuts[n + 1]; ++x) xn.push_back(x);
        if (!(res.psi.eval(xn) >= Rat(BigInt(n)))) {
            detail = "interval value below n at n=" + std::to_string(n);
            return false;
        }
    }
    // Exhaustion certificates for bounded fixtures at epsilon = 1/100, with the
    // cut drawn from the first index beyond 100*B.
    struct Fixture { OmegaSet set; Rat bound; };
    std::vector<Fixture> fixtures = {
        {OmegaSet::finite({7}), Rat(1)},
        {OmegaSet::finite({900}), Rat(1)},
        {OmegaSet::none(), Rat(0)},
    };
    Rat eps(1, 100);
    for (const auto& fx : fixtures) {
        auto cut = res.cut_for_bound(fx.bound, eps);
        if (!cut) {
            detail = "no cut available for bound " + rat_str(fx.bound);
            return false;
        }
        auto cert = exh_certificate(res.psi, fx.set, eps, {{*cut, res.cuts.back()}});
        if (cert.kind != CertKind::ExhYes) {
            detail = "fixture with bound " + rat_str(fx.bound) + " not certified";
            return false;
        }
    }
    detail = "interval values reach n for n <= 10; bounded fixtures certified at 1/100";
    return true;
}

bool criterion12_orders(std::string& detail) {
    for (const auto& handle : standard_catalog()) {
        auto rep = katetov_verify(handle, handle, KatetovMap::identity(), Budget{});
        if (rep.overall != KatetovReport::Overall::EvidencePositive) {
            detail = "identity reduction failed for " + handle.name();
            return false;
        }
    }

    IdealHandle fin = catalog_ideal("fin");
    Rng rng(21);
    std::vector<OmegaSet> tests;
    for (int t = 0; t < 20; ++t) tests.push_back(named_program("hash_dense", {rng.next(), 2, 3}));
    auto split = splitting_check(bit_slice_family(12), fin, tests, Budget{});
    if (!split.all_split()) {
        detail = "a random infinite set went unsplit";
        return false;
    }

    int positive_triples = 0;
    for (int trial = 0; trial < 4000 && positive_triples < 50; ++trial) {
        auto mk = [&](Nat slope, Nat offset) {
            return WeightFn{"affine", [slope, offset](Nat n) {
                                return Rat(BigInt(slope) * BigInt(n) + BigInt(offset));
                            }};
        };
        WeightFn f = mk(rng.below(4), rng.below(50));
        WeightFn g = mk(rng.below(4), rng.below(50));
        WeightFn h = mk(rng.below(4), rng.below(50));
        auto fg = dominance(f, g, 512);
        auto gh = dominance(g, h, 512);
        if (!fg.found || !gh.found) continue;
        ++positive_triples;
        if (!dominance(f, h, 512).found) {
            detail = "transitivity failed on a sampled triple";
            return false;
        }
    }
    if (positive_triples < 50) {
        detail = "could not sample 50 positive triples";
        return false;
    }

    std::vector<MeasureBlockStreamFn> witnesses{preset_block_stream("mass_n2n_plus_1"),
                                                preset_block_stream("mass_nsq2n_plus_1")};
    auto mats = materialize_blocks(witnesses[0], 8);
    std::vector<std::vector<std::pair<std::string, OmegaSet>>> gens(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 2; b <= 5; ++b)
            gens[i].emplace_back("block " + std::to_string(b), OmegaSet::finite(mats[b].support));
    auto demo = tukey_demo(witnesses, gens, 8, 1 << 12, 40);
    if (!demo.success) {
        detail = "tukey demonstration failed: " + demo.diagnostic;
        return false;
    }
    for (const auto& row : demo.matrix) {
        if (row.size() != demo.matrix.size()) {
            detail = "dominance matrix incomplete";
            return false;
        }
    }
    if (demo.inclusions.size() != 8) {
        detail = "missing inclusion evidence";
        return false;
    }
    for (const auto& inc : demo.inclusions) {
        if (!(inc.bound > 0)) {
            detail = "inclusion bound not positive for " + inc.generator;
            return false;
        }
    }
    detail = "identity reductions pass for all " +
             std::to_string(standard_catalog().size()) +
             " catalogued ideals; 20/20 splits; 50 transitive triples; full 2x2 dominance "
             "matrix with inclusion bounds";
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "submeasure axiom suite (10^4 checks per family)", 30.0, criterion1_axioms},
        {2, "asymptotic density spot values (exact)", 10.0, criterion2_phid_spot},
        {3, "non-pathology gaps (exact LP)", 60.0, criterion3_nonpath},
        {4, "Kneser chromatic numbers by brute force", 60.0, criterion4_kneser},
        {5, "edge-size inequality of the selected family", 5.0, criterion5_adl_inequality},
        {6, "diagonal witness against the residue scheme", 30.0, criterion6_npp},
        {7, "disjointification pipeline (stages 1 and 2)", 60.0, criterion7_disjointify},
        {8, "normalization with witness clopens above 1/3", 5.0, criterion8_normalize},
        {9, "extension operator sandwich and fixture", 10.0, criterion9_extension},
        {10, "summable weight extraction identity", 10.0, criterion10_summable_extension},
        {11, "interval rescaling with certified fixtures", 10.0, criterion11_fin_to_exh},
        {12, "order relations: reductions, splitting, dominance, demo", 30.0, criterion12_orders},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < c.limit_seconds;
        bool pass = ok && in_time;
        if (!pass) ++failed;
        std::printf("[%s] criterion %2d (%6.2fs / limit %5.1fs): %s — %s\n",
                    pass ? "PASS" : "FAIL", c.id, secs, c.limit_seconds, c.title.c_str(),
                    ok ? detail.c_str() : detail.c_str());
        if (ok && !in_time) std::printf("       time limit exceeded\n");
    }
    if (failed) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
