// Command-line front door: construct families, run witness pipelines, execute
// verification suites, query order relations, and manage the ideal catalog.
//
// Exit codes: 0 verified/constructed, 1 falsified, 2 unknown/budget
// exhausted, 3 input error.

#include "idealab/json_io.hpp"
#include "idealab/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace idealab;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

struct GlobalFlags {
    Nat horizon = 1 << 12;
    Nat budget = 1 << 12;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string status_name(int exit_code) {
    switch (exit_code) {
        case kExitVerified: return "verified";
        case kExitFalsified: return "falsified";
        case kExitUnknown: return "unknown";
        default: return "input_error";
    }
}

void emit_csv(std::ostream& os, const Json& j, const std::string& prefix) {
    for (const auto& [key, value] : j.items()) {
        std::string path = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) emit_csv(os, value, path);
        else if (value.is_array()) os << path << "," << value.dump() << "\n";
        else if (value.is_string()) os << path << "," << value.get<std::string>() << "\n";
        else os << path << "," << value.dump() << "\n";
    }
}

// Assembles the run report, writes it, and returns the exit code.
int finish(const GlobalFlags& flags, const std::string& operation, int exit_code, Json evidence,
           const Json& input_descriptor, const Timer& timer) {
    Json report;
    report["operation"] = operation;
    report["status"] = status_name(exit_code);
    report["evidence"] = std::move(evidence);
    report["horizon"] = flags.horizon;
    report["budget"] = flags.budget;
    report["seed"] = flags.seed;
    report["input_hash"] = json_hash(input_descriptor);
    report["timing_ms"] = timer.ms();

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!flags.out.empty()) {
        file.open(flags.out);
        if (!file) {
            std::cerr << "cannot open output file: " << flags.out << "\n";
            return kExitInputError;
        }
        os = &file;
    }
    if (flags.format == "csv") emit_csv(*os, report, "");
    else *os << report.dump(2) << "\n";
    return exit_code;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    Json j;
    in >> j;
    return j;
}

// ---- construct ------------------------------------------------------------

int run_construct(const GlobalFlags& flags, const std::string& family, std::size_t depth,
                  const std::string& weight, const std::string& blocks_preset) {
    Timer timer;
    Json descriptor;
    Json evidence;
    if (family == "asymptotic_density" || family == "trace_null" || family == "counting") {
        descriptor["family"] = family;
    } else if (family == "summable" || family == "erdos_ulam") {
        descriptor["family"] = family;
        descriptor["f"] = Json{{"kind", "formula"}, {"name", weight}};
    } else if (family == "density") {
        descriptor["family"] = "density";
        descriptor["preset"] = blocks_preset;
    } else if (family == "adl") {
        HypergraphBlockStreamFn base;
        if (blocks_preset == "flat2") {
            // Deliberately off-schedule base: every edge has size 2.
            base = [](std::size_t k) -> std::optional<HypergraphBlock> {
                if (k >= 16) return std::nullopt;
                HypergraphBlock b;
                b.ground = {10 * k, 10 * k + 1};
                b.graph = Hypergraph(2, {{0, 1}});
                return b;
            };
        } else {
            base = adl_base_blocks();
        }
        // The base family must carry edges of size 2^k at index k.
        for (std::size_t k = 0; k < std::max<std::size_t>(depth, 2) && k < 12; ++k) {
            auto b = base(k);
            if (!b) break;
            for (const auto& e : b->graph.edges()) {
                if (e.size() != (std::size_t{1} << k)) {
                    std::cerr << "base blocks violate the edge-size schedule at index " << k
                              << "\n";
                    return kExitInputError;
                }
            }
        }
        auto sel = adl_select(base, depth, flags.budget);
        if (!sel.success) {
            evidence["diagnostic"] = sel.diagnostic;
            return finish(flags, "construct", kExitUnknown, evidence, Json{{"family", family}},
                          timer);
        }
        if (!sel.config.inequality_holds()) {
            evidence["diagnostic"] = "edge-size inequality failed validation";
            return finish(flags, "construct", kExitFalsified, evidence, Json{{"family", family}},
                          timer);
        }
        descriptor = adl_config_to_json(sel.config);
        descriptor["family"] = "adl";
    } else {
        std::cerr << "unknown family: " << family << "\n";
        return kExitInputError;
    }

    // Validate non-config families by instantiating them.
    if (family != "adl") {
        try {
            submeasure_from_json(descriptor);
        } catch (const std::exception& e) {
            std::cerr << "invalid descriptor: " << e.what() << "\n";
            return kExitInputError;
        }
    }
    evidence["descriptor"] = descriptor;
    return finish(flags, "construct", kExitVerified, evidence, descriptor, timer);
}

// ---- witness pipelines -------------------------------------------------------

std::vector<FinMeasure> measures_from_input(const std::string& input, const std::string& preset,
                                            std::size_t count) {
    if (!input.empty()) {
        Json j = load_json_file(input);
        std::vector<FinMeasure> out;
        for (const auto& mj : j.at("measures")) out.push_back(finmeasure_from_json(mj));
        return out;
    }
    std::vector<FinMeasure> out;
    if (preset == "delta-pair") {
        for (std::size_t n = 0; n < count; ++n)
            out.push_back(delta_pair_witness([](std::size_t i) { return static_cast<Nat>(i); }, n));
    } else if (preset == "scaled-points") {
        for (std::size_t n = 0; n < count; ++n)
            out.push_back(FinMeasure::delta(Atom::point(n), Rat(BigInt(n) + 1)));
    } else if (preset == "bounded") {
        for (std::size_t n = 0; n < count; ++n)
            out.push_back(FinMeasure::delta(Atom::point(1), Rat(2)));
    } else {
        throw std::invalid_argument("unknown measure preset: " + preset);
    }
    return out;
}

int run_witness(const GlobalFlags& flags, const std::string& pipeline, const std::string& input,
                const std::string& preset, std::size_t count, std::size_t depth,
                const std::string& scheme_name, const std::string& blocks_preset) {
    Timer timer;
    Json evidence;
    Json input_desc{{"pipeline", pipeline}, {"input", input}, {"preset", preset},
                    {"count", count},       {"depth", depth}, {"scheme", scheme_name},
                    {"blocks", blocks_preset}};

    if (pipeline == "disjointify") {
        std::vector<FinMeasure> seq = measures_from_input(input, preset, flags.budget);
        MeasureSeqFn fn = [&seq](std::size_t n) {
            return n < seq.size() ? seq[n] : FinMeasure{};
        };
        auto stage1 = disjointify_stage1(fn, count, default_schedule_N(), default_schedule_M(),
                                         seq.size() ? seq.size() - 1 : 0);
        evidence["stage1"] = stage1_to_json(stage1);
        if (!stage1.success)
            return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);

        std::vector<FinMeasure> rho;
        std::vector<Rat> floors;
        for (const auto& item : stage1.items) {
            rho.push_back(item.nu);
            floors.push_back(Rat(BigInt(item.k) + 1));
        }
        auto stage2 = disjointify_stage2(rho, floors, CaseRule::Auto);
        evidence["stage2"] = stage2_to_json(stage2);
        if (!stage2.success)
            return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);

        // Postcondition replay: pairwise disjoint supports, p removed exactly.
        FinSet seen;
        for (const auto& item : stage2.items) {
            if (item.nu.p_weight() != 0 || !fs_disjoint(seen, item.nu.omega_support()))
                return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
            seen = fs_union(seen, item.nu.omega_support());
        }

        // Composition tail: normalize the disjointified outputs and record the
        // witness clopens.
        std::vector<FinMeasure> disjoint;
        for (const auto& item : stage2.items) disjoint.push_back(item.nu);
        auto normalized = anti_grothendieck_normalize(disjoint);
        evidence["normalized"] = normalize_to_json(normalized);
        for (const auto& item : normalized) {
            if (item.normalized.norm() != 1 || !(rat_abs(item.value) > Rat(1, 3)))
                return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
        }
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "anti-grothendieck") {
        std::vector<FinMeasure> seq =
            measures_from_input(input, preset.empty() ? "scaled-points" : preset, count);
        try {
            auto out = anti_grothendieck_normalize(seq);
            evidence["normalized"] = normalize_to_json(out);
            for (const auto& item : out) {
                if (item.normalized.norm() != 1 || !(rat_abs(item.value) > Rat(1, 3)))
                    return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
            }
        } catch (const std::invalid_argument& e) {
            std::cerr << "invalid input: " << e.what() << "\n";
            return kExitInputError;
        }
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "npp") {
        PartitionScheme scheme = scheme_name == "trivial" ? PartitionScheme::trivial()
                                                          : PartitionScheme::residue(2);
        HypergraphBlockStreamFn blocks;
        if (blocks_preset == "aligned") {
            blocks = [](std::size_t k) -> std::optional<HypergraphBlock> {
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
        } else {
            blocks = adl_base_blocks();
        }
        std::vector<std::size_t> m_set;
        for (std::size_t k = 0; k < depth; ++k) m_set.push_back(k);
        auto w = npp_failure_witness(blocks, scheme, depth, m_set, flags.budget);
        evidence["witness"] = npp_witness_to_json(w);
        if (!w.success) return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);
        for (const auto& r : w.ratios) {
            if (r != 1) return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
        }
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "summable-ext") {
        auto blocks = preset_block_stream(blocks_preset.empty() ? "mass_n2n_plus_1" : blocks_preset);
        auto res = summable_extension(blocks, depth, flags.budget);
        evidence["extension"] = summable_extension_to_json(res);
        if (!res.success) return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);
        for (std::size_t k = 1; k <= res.per_block_sums.size(); ++k) {
            if (!(res.per_block_sums[k - 1] > Rat(BigInt(k))))
                return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
        }
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "partition-select") {
        PartitionScheme scheme = scheme_name == "trivial" ? PartitionScheme::trivial()
                                                          : PartitionScheme::residue(2);
        auto res = partition_unbounded_selection(make_counting(), scheme, depth, flags.budget);
        evidence["selection"] = partition_selection_to_json(res);
        if (!res.success) return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "sign-select") {
        std::vector<OmegaSet> sets(depth, named_program("evens"));
        auto res = sign_scheme_selection(make_counting(), sets, depth, flags.budget);
        evidence["selection"] = sign_selection_to_json(res);
        if (!res.success) return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "fin-exh") {
        Submeasure phi = preset == "asymptotic_density" ? make_asymptotic_density()
                                                        : make_counting();
        auto res = fin_to_exh(phi, depth, flags.budget);
        evidence["rescaling"] = fin_to_exh_to_json(res);
        if (!res.success) return finish(flags, "witness", kExitUnknown, evidence, input_desc, timer);
        // Replay the interval guarantees exactly.
        for (std::size_t n = 1; n + 1 < res.cuts.size(); ++n) {
            FinSet xn;
            for (Nat x = res.cuts[n]; x < res.cuts[n + 1]; ++x) xn.push_back(x);
            if (!(res.psi.eval(xn) >= Rat(BigInt(n))))
                return finish(flags, "witness", kExitFalsified, evidence, input_desc, timer);
        }
        return finish(flags, "witness", kExitVerified, evidence, input_desc, timer);
    }

    if (pipeline == "snpp") {
        std::vector<OmegaSet> chain;
        for (Nat m = 0; m <= depth; ++m) {
            FinSet head;
            for (Nat x = 0; x < m; ++x) head.push_back(x);
            chain.push_back(OmegaSet::cofinite(head));
        }
        OmegaSet e = named_program(preset.empty() || preset == "delta-pair" ? "evens" : preset);
        auto dec = snpp_decomposition(e, chain, flags.horizon);
        evidence["decomposition"] = snpp_to_json(dec);
        return finish(flags, "witness", dec.partition_ok ? kExitVerified : kExitFalsified,
                      evidence, input_desc, timer);
    }

    std::cerr << "unknown pipeline: " << pipeline << "\n";
    return kExitInputError;
}

// ---- verify suites --------------------------------------------------------

struct SuiteOutcome {
    bool ok = true;
    Json detail;
};

// Greedy 1-minimal shrinks: repeatedly drop any single point whose removal
// keeps the violation alive.
void shrink_monotonicity(const Submeasure& phi, FinSet& f, FinSet& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Nat x : FinSet(g)) {
            FinSet g2 = fs_minus(g, {x});
            FinSet f2 = fs_intersect(f, g2);  // the pair stays nested
            if (phi.eval(f2) > phi.eval(g2)) {
                f = std::move(f2);
                g = std::move(g2);
                changed = true;
                break;
            }
        }
    }
}

void shrink_subadditivity(const Submeasure& phi, FinSet& g, FinSet& o) {
    auto violates = [&](const FinSet& a, const FinSet& b) {
        return phi.eval(fs_union(a, b)) > phi.eval(a) + phi.eval(b);
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t side = 0; side < 2 && !changed; ++side) {
            const FinSet& target = side == 0 ? g : o;
            for (Nat x : FinSet(target)) {
                FinSet g2 = side == 0 ? fs_minus(g, {x}) : g;
                FinSet o2 = side == 1 ? fs_minus(o, {x}) : o;
                if (violates(g2, o2)) {
                    g = std::move(g2);
                    o = std::move(o2);
                    changed = true;
                    break;
                }
            }
        }
    }
}

SuiteOutcome suite_submeasure_axioms(const GlobalFlags& flags, const std::string& descriptor_path) {
    SuiteOutcome out;
    std::vector<std::pair<std::string, Submeasure>> zoo;
    if (!descriptor_path.empty()) {
        Json j = load_json_file(descriptor_path);
        zoo.emplace_back("descriptor", submeasure_from_json(j));
    } else {
        zoo.emplace_back("asymptotic_density", make_asymptotic_density());
        zoo.emplace_back("erdos_ulam", make_erdos_ulam(weight_by_name("reciprocal")));
        zoo.emplace_back("summable", make_summable(weight_by_name("reciprocal")));
        zoo.emplace_back("trace_null", make_trace_null());
        zoo.emplace_back("density_mass_k", make_density(preset_block_stream("mass_k")));
    }
    Rng rng(flags.seed);
    Nat universe = 300;
    std::size_t samples = static_cast<std::size_t>(std::min<Nat>(flags.budget, 2000));
    Json results = Json::array();
    for (const auto& [name, phi] : zoo) {
        std::size_t violations = 0;
        Json counterexample;
        for (std::size_t trial = 0; trial < samples; ++trial) {
            FinSet g = rng.subset(universe, 1, 5);
            FinSet f;
            for (Nat x : g)
                if (rng.below(2)) f.push_back(x);
            FinSet other = rng.subset(universe, 1, 6);
            Rat vf = phi.eval(f), vg = phi.eval(g);
            Rat vu = phi.eval(fs_union(g, other)), vo = phi.eval(other);
            if (vf > vg || vu > vg + vo) {
                ++violations;
                if (counterexample.is_null()) {
                    if (vf > vg) {
                        shrink_monotonicity(phi, f, g);
                        counterexample = Json{{"family", name},
                                              {"axiom", "monotonicity"},
                                              {"F", f},
                                              {"G", g},
                                              {"phi(F)", rat_str(phi.eval(f))},
                                              {"phi(G)", rat_str(phi.eval(g))}};
                    } else {
                        shrink_subadditivity(phi, g, other);
                        counterexample = Json{{"family", name},
                                              {"axiom", "subadditivity"},
                                              {"G", g},
                                              {"other", other},
                                              {"phi(union)", rat_str(phi.eval(fs_union(g, other)))},
                                              {"phi(G)", rat_str(phi.eval(g))},
                                              {"phi(other)", rat_str(phi.eval(other))}};
                    }
                }
            }
        }
        results.push_back(Json{{"family", name}, {"samples", samples}, {"violations", violations}});
        if (violations) {
            out.ok = false;
            out.detail["counterexample"] = counterexample;
        }
    }
    out.detail["results"] = results;
    return out;
}

SuiteOutcome suite_kneser_chromatic(const GlobalFlags&) {
    SuiteOutcome out;
    Json rows = Json::array();
    for (Nat k = 1; k <= 3; ++k) {
        for (Nat m = 2; m <= 8; ++m) {
            for (Nat r = 2; r * k <= m; ++r) {
                Nat binom = 1;
                for (Nat i = 0; i < k; ++i) binom = binom * (m - i) / (i + 1);
                if (binom > 20) continue;
                std::size_t exact = chromatic_exact(kneser_generate(m, k, r));
                std::size_t bound = kneser_chromatic_lower_bound(m, k, r);
                rows.push_back(Json{{"m", m}, {"k", k}, {"r", r}, {"exact", exact}, {"bound", bound}});
                if (exact != bound) {
                    out.ok = false;
                    out.detail["counterexample"] = rows.back();
                }
            }
        }
    }
    out.detail["rows"] = rows;
    return out;
}

SuiteOutcome suite_nonpath_gap(const GlobalFlags& flags) {
    SuiteOutcome out;
    Submeasure dens = make_density(preset_block_stream("mass_k"));
    Rng rng(flags.seed);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet f = rng.pick(80, 1 + rng.below(12));
        Rat gap = nonpath_gap(dens, f);
        if (gap != 0) {
            out.ok = false;
            out.detail["counterexample"] = Json{{"F", f}, {"gap", rat_str(gap)}};
            return out;
        }
    }
    Submeasure path = make_table(
        {0, 1, 2},
        [](const FinSet& f) {
            if (f.empty()) return Rat(0);
            return f.size() <= 2 ? Rat(1) : Rat(2);
        },
        "pathological-3pt");
    Rat fixture_gap = nonpath_gap(path, {0, 1, 2});
    out.detail["fixture_gap"] = rat_str(fixture_gap);
    if (fixture_gap != Rat(1, 2)) out.ok = false;
    return out;
}

SuiteOutcome suite_prefix_laws(const GlobalFlags& flags) {
    SuiteOutcome out;
    Rng rng(flags.seed);
    std::vector<OmegaSet> sets = {
        named_program("evens"), named_program("squares"), OmegaSet::cofinite({1, 5}),
        OmegaSet::finite({3, 9, 12}),
        OmegaSet::block_union(std::vector<Block>{{1, 4}, {10, 12}, {50, 60}})};
    for (const auto& a : sets) {
        for (int trial = 0; trial < 50; ++trial) {
            Nat m = rng.below(2000) + 1;
            Nat n = rng.below(m + 1);
            FinSet clipped;
            for (Nat x : a.prefix(m))
                if (x < n) clipped.push_back(x);
            if (a.prefix(n) != clipped) {
                out.ok = false;
                out.detail["counterexample"] = Json{{"set", a.describe()}, {"n", n}, {"m", m}};
                return out;
            }
        }
    }
    return out;
}

SuiteOutcome suite_measure_additivity(const GlobalFlags& flags) {
    SuiteOutcome out;
    Rng rng(flags.seed);
    for (int trial = 0; trial < 500; ++trial) {
        FinMeasure m;
        std::size_t count = 1 + rng.below(5);
        for (std::size_t i = 0; i < count; ++i)
            m.add(Atom::point(rng.below(50)), Rat(static_cast<long long>(rng.below(19)) - 9));
        if (rng.below(2)) m.add(Atom::p(), Rat(static_cast<long long>(rng.below(7)) - 3));
        FinSet s = rng.subset(50, 1, 2);
        FinSet a_side;
        for (Nat x : s)
            if (rng.below(2)) a_side.push_back(x);
        ClopenCode a = ClopenCode::small(OmegaSet::finite(a_side));
        ClopenCode b = ClopenCode::cosmall(OmegaSet::finite(s));
        ClopenCode join = ClopenCode::cosmall(OmegaSet::finite(fs_minus(s, a_side)));
        bool additive = measure_eval(m, join) == measure_eval(m, a) + measure_eval(m, b);
        bool norms = restrict_measure(m, a).norm() + restrict_measure(m, a.complement()).norm() ==
                     m.norm();
        if (!additive || !norms) {
            out.ok = false;
            out.detail["counterexample"] = finmeasure_to_json(m);
            return out;
        }
    }
    return out;
}

SuiteOutcome suite_extension_bounds(const GlobalFlags& flags) {
    SuiteOutcome out;
    Rng rng(flags.seed);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<Nat, Rat>> weights;
        std::size_t count = rng.below(6);
        for (std::size_t i = 0; i < count; ++i)
            weights.emplace_back(rng.below(30),
                                 Rat(static_cast<long long>(rng.below(15)) - 7, 1 + rng.below(4)));
        WeightStream mu = WeightStream::finitely_supported(std::move(weights));
        Rat alpha(static_cast<long long>(rng.below(11)) - 5);
        auto rep = extension_bounds_check(mu, alpha, {8, 16, 32});
        if (!rep.sandwich_ok || !rep.monotone_ok || !rep.decomposition_ok) {
            out.ok = false;
            out.detail["counterexample"] = Json{{"alpha", rat_str(alpha)}, {"trial", trial}};
            return out;
        }
    }
    auto fixture = extension_bounds_check(WeightStream::geometric_half(), Rat(0), {4, 8, 12});
    out.detail["fixture_norm"] = rat_str(fixture.horizon_norm);
    if (!(fixture.horizon_norm > Rat(2) - pow2_inv(10))) out.ok = false;
    return out;
}

SuiteOutcome suite_density_oracle(const GlobalFlags& flags) {
    SuiteOutcome out;
    auto stream = preset_block_stream("mass_k");
    auto blocks = materialize_blocks(stream, 10);
    Submeasure dens = make_density(stream);
    Rng rng(flags.seed);
    for (int trial = 0; trial < 100; ++trial) {
        FinSet f = rng.subset(600, 1, 3);
        Rat expected = 0;
        for (const auto& b : blocks) expected = std::max(expected, b.value_on(f));
        if (dens.eval(f) != expected) {
            out.ok = false;
            out.detail["counterexample"] = Json{{"F", f}};
            return out;
        }
    }
    return out;
}

SuiteOutcome suite_trace_null_oracle(const GlobalFlags& flags) {
    SuiteOutcome out;
    Rng rng(flags.seed);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<std::string> strings;
        std::size_t count = 1 + rng.below(5);
        std::size_t max_len = 0;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t len = 1 + rng.below(6);
            max_len = std::max(max_len, len);
            std::string s;
            for (std::size_t j = 0; j < len; ++j) s.push_back(rng.below(2) ? '1' : '0');
            strings.push_back(std::move(s));
        }
        Nat total = Nat{1} << max_len;
        Nat hits = 0;
        for (Nat x = 0; x < total; ++x) {
            std::string word;
            for (std::size_t i = 0; i < max_len; ++i)
                word.push_back(static_cast<char>('0' + ((x >> (max_len - 1 - i)) & 1)));
            for (const auto& s : strings) {
                if (word.compare(0, s.size(), s) == 0) {
                    ++hits;
                    break;
                }
            }
        }
        if (cylinder_measure(strings) != Rat(BigInt(hits), BigInt(total))) {
            out.ok = false;
            return out;
        }
    }
    return out;
}

int run_verify(const GlobalFlags& flags, const std::string& suite, const std::string& descriptor) {
    Timer timer;
    Json input_desc{{"suite", suite}, {"descriptor", descriptor}};
    SuiteOutcome out;
    try {
        if (suite == "submeasure-axioms") out = suite_submeasure_axioms(flags, descriptor);
        else if (suite == "kneser-chromatic") out = suite_kneser_chromatic(flags);
        else if (suite == "nonpath-gap") out = suite_nonpath_gap(flags);
        else if (suite == "prefix-laws") out = suite_prefix_laws(flags);
        else if (suite == "measure-additivity") out = suite_measure_additivity(flags);
        else if (suite == "extension-bounds") out = suite_extension_bounds(flags);
        else if (suite == "density-oracle") out = suite_density_oracle(flags);
        else if (suite == "trace-null-oracle") out = suite_trace_null_oracle(flags);
        else {
            std::cerr << "unknown suite: " << suite << "\n";
            return kExitInputError;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return finish(flags, "verify:" + suite, out.ok ? kExitVerified : kExitFalsified, out.detail,
                  input_desc, timer);
}

// ---- order commands -----------------------------------------------------------

int run_order(const GlobalFlags& flags, const std::string& relation, const std::string& from,
              const std::string& to, const std::string& fweight, const std::string& gweight,
              std::size_t tests, std::size_t depth) {
    Timer timer;
    Budget budget;
    budget.horizon = flags.horizon;
    Json input_desc{{"relation", relation}, {"from", from}, {"to", to}};
    try {
        if (relation == "katetov") {
            auto rep = katetov_verify(catalog_ideal(from), catalog_ideal(to),
                                      KatetovMap::identity(), budget);
            Json evidence = katetov_to_json(rep);
            int code = rep.overall == KatetovReport::Overall::Falsified ? kExitFalsified
                       : rep.overall == KatetovReport::Overall::EvidencePositive ? kExitVerified
                                                                                 : kExitUnknown;
            return finish(flags, "order:katetov", code, evidence, input_desc, timer);
        }
        if (relation == "dominance") {
            auto d = dominance(weight_by_name(fweight), weight_by_name(gweight), flags.horizon);
            return finish(flags, "order:dominance", d.found ? kExitVerified : kExitFalsified,
                          dominance_to_json(d), input_desc, timer);
        }
        if (relation == "splitting") {
            Rng rng(flags.seed);
            std::vector<OmegaSet> test_sets;
            for (std::size_t t = 0; t < tests; ++t)
                test_sets.push_back(named_program("hash_dense", {rng.next(), 2, 3}));
            auto rep = splitting_check(bit_slice_family(12), catalog_ideal(from), test_sets, budget);
            return finish(flags, "order:splitting",
                          rep.all_split() ? kExitVerified : kExitUnknown, splitting_to_json(rep),
                          input_desc, timer);
        }
        if (relation == "tukey-demo") {
            std::vector<MeasureBlockStreamFn> witnesses{preset_block_stream("mass_n2n_plus_1"),
                                                        preset_block_stream("mass_nsq2n_plus_1")};
            auto mats = materialize_blocks(witnesses[0], 6);
            std::vector<std::vector<std::pair<std::string, OmegaSet>>> gens(2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t b = 2; b <= 4; ++b)
                    gens[i].emplace_back("block " + std::to_string(b),
                                         OmegaSet::finite(mats[b].support));
            auto rep = tukey_demo(witnesses, gens, depth, flags.horizon, flags.budget);
            return finish(flags, "order:tukey-demo", rep.success ? kExitVerified : kExitUnknown,
                          tukey_to_json(rep), input_desc, timer);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    std::cerr << "unknown relation: " << relation << "\n";
    return kExitInputError;
}

// ---- catalog ------------------------------------------------------------------

Json builtin_descriptor(const std::string& name) {
    Json j;
    j["name"] = name;
    if (name == "fin") j["submeasure"] = Json{{"family", "counting"}};
    else if (name == "density_zero") j["submeasure"] = Json{{"family", "asymptotic_density"}};
    else if (name == "log_density_zero")
        j["submeasure"] =
            Json{{"family", "erdos_ulam"}, {"f", Json{{"kind", "formula"}, {"name", "reciprocal"}}}};
    else if (name == "summable_reciprocal")
        j["submeasure"] =
            Json{{"family", "summable"}, {"f", Json{{"kind", "formula"}, {"name", "reciprocal"}}}};
    else if (name == "density_blocks")
        j["submeasure"] = Json{{"family", "density"}, {"preset", "mass_k"}};
    else if (name == "trace_null") j["submeasure"] = Json{{"family", "trace_null"}};
    else if (name == "hypergraph_adl")
        j["submeasure"] = Json{{"family", "hypergraph"}, {"depth", 5}};
    return j;
}

int run_catalog(const GlobalFlags& flags, const std::string& action, const std::string& name,
                const std::string& file, const std::string& dir) {
    Timer timer;
    namespace fs = std::filesystem;
    Json input_desc{{"action", action}, {"name", name}};
    if (action == "list") {
        Json names = Json::array();
        for (const auto& h : standard_catalog()) names.push_back(h.name());
        if (!dir.empty() && fs::exists(dir)) {
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.path().extension() == ".json" && entry.path().filename() != "index.json")
                    names.push_back(entry.path().stem().string());
            }
        }
        return finish(flags, "catalog:list", kExitVerified, Json{{"ideals", names}}, input_desc,
                      timer);
    }
    if (action == "show") {
        try {
            if (!dir.empty() && fs::exists(fs::path(dir) / (name + ".json"))) {
                Json j = load_json_file((fs::path(dir) / (name + ".json")).string());
                return finish(flags, "catalog:show", kExitVerified, j, input_desc, timer);
            }
            IdealHandle h = catalog_ideal(name);
            Json j = builtin_descriptor(name);
            Json gens = Json::array();
            for (const auto& [desc, gen] : h.generators()) {
                gens.push_back(Json{{"description", desc}, {"set", omega_to_json(gen)}});
            }
            j["generators"] = gens;
            return finish(flags, "catalog:show", kExitVerified, j, input_desc, timer);
        } catch (const std::invalid_argument& e) {
            std::cerr << e.what() << "\n";
            return kExitInputError;
        }
    }
    if (action == "add") {
        try {
            Json j = load_json_file(file);
            std::string ideal_name = j.at("name").get<std::string>();
            // The descriptor must instantiate and its generators must certify.
            Submeasure phi = submeasure_from_json(j.at("submeasure"));
            IdealHandle h = exh_ideal_handle(ideal_name, phi);
            if (j.contains("generators")) {
                for (const auto& gj : j.at("generators"))
                    h.add_generator(gj.value("description", ""), omega_from_json(gj.at("set")));
            }
            Budget budget;
            budget.horizon = flags.horizon;
            for (const auto& [desc, gen] : h.generators()) {
                auto cert = h.member(gen, budget);
                if (!cert_is_positive(cert.kind)) {
                    std::cerr << "generator fails membership: " << desc << "\n";
                    return finish(flags, "catalog:add", kExitFalsified,
                                  Json{{"generator", desc}, {"certificate", certificate_to_json(cert)}},
                                  input_desc, timer);
                }
            }
            fs::create_directories(dir.empty() ? "catalog" : dir);
            fs::path target = fs::path(dir.empty() ? "catalog" : dir) / (ideal_name + ".json");
            std::ofstream os(target);
            os << j.dump(2) << "\n";
            // Refresh the index.
            Json index = Json::array();
            for (const auto& entry : fs::directory_iterator(dir.empty() ? "catalog" : dir)) {
                if (entry.path().extension() == ".json" && entry.path().filename() != "index.json")
                    index.push_back(entry.path().stem().string());
            }
            std::ofstream idx(fs::path(dir.empty() ? "catalog" : dir) / "index.json");
            idx << Json{{"ideals", index}}.dump(2) << "\n";
            return finish(flags, "catalog:add", kExitVerified, Json{{"written", target.string()}},
                          input_desc, timer);
        } catch (const std::exception& e) {
            std::cerr << "input error: " << e.what() << "\n";
            return kExitInputError;
        }
    }
    std::cerr << "unknown catalog action: " << action << "\n";
    return kExitInputError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic laboratory for ideals, submeasures, and measure pipelines"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--horizon", flags.horizon, "evaluation horizon");
    app.add_option("--budget", flags.budget, "search budget (max horizon/index per step)");
    app.add_option("--seed", flags.seed, "seed for all sampling");
    app.add_option("--out", flags.out, "write the report to this file");
    app.add_option("--format", flags.format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // construct
    auto* construct = app.add_subcommand("construct", "build and validate a family descriptor");
    std::string family, weight = "reciprocal", blocks_preset = "mass_k";
    std::size_t depth = 5;
    construct->add_option("family", family,
                          "asymptotic_density|erdos_ulam|summable|trace_null|density|counting|adl")
        ->required();
    construct->add_option("--depth", depth, "selection depth for adl");
    construct->add_option("--weight", weight, "weight stream name");
    construct->add_option("--blocks", blocks_preset, "density block preset");

    // witness
    auto* witness = app.add_subcommand("witness", "run a witness pipeline");
    std::string pipeline, winput, wpreset = "delta-pair", wscheme = "residue", wblocks;
    std::size_t wcount = 8, wdepth = 4;
    witness->add_option("pipeline", pipeline,
                        "disjointify|anti-grothendieck|npp|summable-ext|partition-select|"
                        "sign-select|fin-exh|snpp")
        ->required();
    witness->add_option("--input", winput, "JSON input file with measures");
    witness->add_option("--preset", wpreset, "input preset");
    witness->add_option("--count", wcount, "pipeline steps / measures to generate");
    witness->add_option("--depth", wdepth, "selection depth");
    witness->add_option("--scheme", wscheme, "partition scheme: residue|trivial");
    witness->add_option("--blocks", wblocks, "block preset");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite, vdescriptor;
    verify->add_option("suite", suite,
                       "submeasure-axioms|kneser-chromatic|nonpath-gap|prefix-laws|"
                       "measure-additivity|extension-bounds|density-oracle|trace-null-oracle")
        ->required();
    verify->add_option("--descriptor", vdescriptor, "submeasure descriptor file to check instead");

    // order
    auto* order = app.add_subcommand("order", "katetov|dominance|splitting|tukey-demo");
    std::string relation, ofrom = "density_zero", oto = "density_zero", ofw = "linear",
                ogw = "linear";
    std::size_t otests = 20, odepth = 6;
    order->add_option("relation", relation, "katetov|dominance|splitting|tukey-demo")->required();
    order->add_option("--from", ofrom, "source catalogued ideal");
    order->add_option("--to", oto, "target catalogued ideal");
    order->add_option("--f", ofw, "first weight stream");
    order->add_option("--g", ogw, "second weight stream");
    order->add_option("--tests", otests, "number of splitting tests");
    order->add_option("--depth", odepth, "extension depth for tukey-demo");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list|show|add");
    std::string caction, cname, cfile, cdir;
    catalog->add_option("action", caction, "list|show|add")->required();
    catalog->add_option("name", cname, "ideal name for show");
    catalog->add_option("--file", cfile, "descriptor file for add");
    catalog->add_option("--dir", cdir, "catalog directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInputError;
    }

    try {
        if (construct->parsed()) return run_construct(flags, family, depth, weight, blocks_preset);
        if (witness->parsed())
            return run_witness(flags, pipeline, winput, wpreset, wcount, wdepth, wscheme, wblocks);
        if (verify->parsed()) return run_verify(flags, suite, vdescriptor);
        if (order->parsed())
            return run_order(flags, relation, ofrom, oto, ofw, ogw, otests, odepth);
        if (catalog->parsed()) return run_catalog(flags, caction, cname, cfile, cdir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
