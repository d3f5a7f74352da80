#include "idealab/orders.hpp"

#include "idealab/hypergraph.hpp"

#include <stdexcept>

namespace idealab {

bool cert_is_positive(CertKind k) {
    return k == CertKind::ExhYes || k == CertKind::FinYes || k == CertKind::ZeroYes;
}

bool cert_is_negative(CertKind k) { return k == CertKind::ExhNo; }

IdealHandle exh_ideal_handle(std::string name, Submeasure phi) {
    auto member = [phi](const OmegaSet& a, const Budget& budget) {
        return exh_certificate(phi, a, budget.epsilon, default_schedule(budget.horizon));
    };
    return IdealHandle(std::move(name), member);
}

namespace {

void add_standard_small_generators(IdealHandle& h) {
    h.add_generator("finite 0..9", OmegaSet::finite({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
    h.add_generator("finite sparse", OmegaSet::finite({5, 17, 100, 1000}));
}

} // namespace

std::vector<IdealHandle> standard_catalog() {
    std::vector<IdealHandle> catalog;

    {
        IdealHandle fin = exh_ideal_handle("fin", make_counting());
        fin.add_generator("empty", OmegaSet::none());
        add_standard_small_generators(fin);
        fin.add_generator("finite evens below 20", OmegaSet::finite({0, 2, 4, 6, 8, 10, 12, 14, 16, 18}));
        fin.add_generator("finite block", OmegaSet::finite({1000, 1001, 1002, 1003, 1004}));
        catalog.push_back(std::move(fin));
    }
    {
        IdealHandle z = exh_ideal_handle("density_zero", make_asymptotic_density());
        z.add_generator("squares", named_program("squares"));
        z.add_generator("cubes", named_program("cubes"));
        z.add_generator("powers of two", named_program("powers_of_two"));
        z.add_generator("factorials", named_program("factorials"));
        z.add_generator("one below each power of two", named_program("pow2_minus_1"));
        catalog.push_back(std::move(z));
    }
    {
        IdealHandle zlog = exh_ideal_handle("log_density_zero", make_erdos_ulam(weight_by_name("reciprocal")));
        zlog.add_generator("squares", named_program("squares"));
        zlog.add_generator("cubes", named_program("cubes"));
        zlog.add_generator("powers of two", named_program("powers_of_two"));
        zlog.add_generator("factorials", named_program("factorials"));
        zlog.add_generator("one below each power of two", named_program("pow2_minus_1"));
        catalog.push_back(std::move(zlog));
    }
    {
        IdealHandle summ = exh_ideal_handle("summable_reciprocal",
                                            make_summable(weight_by_name("reciprocal")));
        summ.add_generator("squares", named_program("squares"));
        summ.add_generator("cubes", named_program("cubes"));
        summ.add_generator("powers of two", named_program("powers_of_two"));
        summ.add_generator("factorials", named_program("factorials"));
        add_standard_small_generators(summ);
        catalog.push_back(std::move(summ));
    }
    {
        IdealHandle dens = exh_ideal_handle("density_blocks",
                                            make_density(preset_block_stream("mass_k"), "density-mass-k"));
        dens.add_generator("one below each power of two", named_program("pow2_minus_1"));
        dens.add_generator("powers of two", named_program("powers_of_two"));
        dens.add_generator("factorials", named_program("factorials"));
        add_standard_small_generators(dens);
        catalog.push_back(std::move(dens));
    }
    {
        IdealHandle tr = exh_ideal_handle("trace_null", make_trace_null());
        tr.add_generator("all-zeros branch", named_program("pow2_minus_1"));
        tr.add_generator("all-ones branch",
                         OmegaSet::program("ones_branch", [](Nat n) { return ((n + 2) & (n + 1)) == 0; }));
        tr.add_generator("alternating branch", named_program("alternating_string"));
        tr.add_generator("strings with at most one 1", named_program("low_weight_string"));
        add_standard_small_generators(tr);
        catalog.push_back(std::move(tr));
    }
    {
        auto sel = adl_select(adl_base_blocks(), 5, 64);
        if (!sel.success) throw std::logic_error("base selection unexpectedly failed");
        IdealHandle adl = exh_ideal_handle("hypergraph_adl",
                                           adl_ideal(sel.config, OmegaSet::all()));
        adl.add_generator("one below each power of two", named_program("pow2_minus_1"));
        adl.add_generator("powers of two", named_program("powers_of_two"));
        adl.add_generator("factorials", named_program("factorials"));
        add_standard_small_generators(adl);
        catalog.push_back(std::move(adl));
    }
    return catalog;
}

IdealHandle catalog_ideal(const std::string& name) {
    for (auto& h : standard_catalog()) {
        if (h.name() == name) return h;
    }
    throw std::invalid_argument("no catalogued ideal named '" + name + "'");
}

KatetovReport katetov_verify(const IdealHandle& from, const IdealHandle& to, const KatetovMap& map,
                             const Budget& budget) {
    KatetovReport rep;
    bool all_positive = !from.generators().empty();
    bool any_negative = false;
    for (const auto& [desc, gen] : from.generators()) {
        OmegaSet g = gen;
        auto f = map.at;
        OmegaSet preimage = OmegaSet::program("preimage(" + map.name + "," + desc + ")",
                                              [g, f](Nat n) { return g.contains(f(n)); });
        KatetovItemReport item;
        item.generator = desc;
        item.cert = to.member(preimage, budget);
        if (!cert_is_positive(item.cert.kind)) all_positive = false;
        if (cert_is_negative(item.cert.kind)) any_negative = true;
        rep.items.push_back(std::move(item));
    }
    if (any_negative) rep.overall = KatetovReport::Overall::Falsified;
    else if (all_positive) rep.overall = KatetovReport::Overall::EvidencePositive;
    else rep.overall = KatetovReport::Overall::Inconclusive;
    return rep;
}

FilterHandle dual_filter(const IdealHandle& ideal) {
    IdealHandle copy = ideal;
    return FilterHandle("dual(" + ideal.name() + ")",
                        [copy](const OmegaSet& a, const Budget& b) {
                            return copy.member(a.complement(), b);
                        });
}

namespace {

DirectSumVerdict direct_sum_verdict(const FilterHandle& f1, const FilterHandle& f2,
                                    const OmegaSet& part_one,
                                    const std::function<Nat(Nat)>& embed_one,
                                    const std::function<Nat(Nat)>& embed_two, const OmegaSet& a,
                                    const Budget& budget) {
    OmegaSet part = part_one;
    OmegaSet set = a;
    auto b1 = embed_one;
    auto b2 = embed_two;
    OmegaSet trace1 = OmegaSet::program("trace1", [set, b1](Nat n) { return set.contains(b1(n)); });
    OmegaSet trace2 = OmegaSet::program("trace2", [set, b2](Nat n) { return set.contains(b2(n)); });

    DirectSumVerdict v;
    v.first = f1.member(trace1, budget);
    v.second = f2.member(trace2, budget);
    bool p1 = cert_is_positive(v.first.kind), p2 = cert_is_positive(v.second.kind);
    bool n1 = cert_is_negative(v.first.kind), n2 = cert_is_negative(v.second.kind);
    if (p1 && p2) v.overall = DirectSumVerdict::Overall::Member;
    else if (n1 || n2) v.overall = DirectSumVerdict::Overall::Falsified;
    else v.overall = DirectSumVerdict::Overall::Inconclusive;
    return v;
}

} // namespace

DirectSumVerdict direct_sum_eval(const FilterHandle& f1, const FilterHandle& f2,
                                 const OmegaSet& part_one, const std::function<Nat(Nat)>& embed_one,
                                 const std::function<Nat(Nat)>& embed_two, const OmegaSet& a,
                                 const Budget& budget) {
    return direct_sum_verdict(f1, f2, part_one, embed_one, embed_two, a, budget);
}

FilterHandle direct_sum(const FilterHandle& f1, const FilterHandle& f2, const OmegaSet& part_one,
                        const std::function<Nat(Nat)>& embed_one,
                        const std::function<Nat(Nat)>& embed_two) {
    FilterHandle a = f1, b = f2;
    OmegaSet part = part_one;
    auto e1 = embed_one, e2 = embed_two;
    return FilterHandle(
        f1.name() + "(+)" + f2.name(),
        [a, b, part, e1, e2](const OmegaSet& x, const Budget& budget) {
            DirectSumVerdict v = direct_sum_verdict(a, b, part, e1, e2, x, budget);
            // Conjunction: the weaker of the two component grades.
            MembershipCertificate cert;
            cert.epsilon = budget.epsilon;
            if (v.overall == DirectSumVerdict::Overall::Member) {
                cert.kind = CertKind::ExhYes;
                cert.note = "both component traces certify membership";
            } else if (v.overall == DirectSumVerdict::Overall::Falsified) {
                cert.kind = CertKind::ExhNo;
                cert.note = "a component trace carries negative evidence";
            } else {
                cert.kind = CertKind::Unknown;
                cert.note = "component traces inconclusive";
            }
            return cert;
        });
}

SplittingReport splitting_check(const std::vector<OmegaSet>& family, const IdealHandle& ideal,
                                const std::vector<OmegaSet>& tests, const Budget& budget) {
    SplittingReport rep;
    for (std::size_t t = 0; t < tests.size(); ++t) {
        SplittingItem item;
        item.test_index = t;
        MembershipCertificate pre = ideal.member(tests[t], budget);
        item.precondition_ok = cert_is_negative(pre.kind);
        for (std::size_t b = 0; b < family.size(); ++b) {
            MembershipCertificate left =
                ideal.member(omega_intersect(tests[t], family[b]), budget);
            if (!cert_is_negative(left.kind)) continue;
            MembershipCertificate right =
                ideal.member(omega_intersect(tests[t], family[b].complement()), budget);
            if (!cert_is_negative(right.kind)) continue;
            item.split = true;
            item.splitter = b;
            item.left = std::move(left);
            item.right = std::move(right);
            break;
        }
        rep.items.push_back(std::move(item));
    }
    return rep;
}

std::vector<OmegaSet> bit_slice_family(std::size_t bits) {
    std::vector<OmegaSet> out;
    for (std::size_t k = 0; k < bits; ++k) out.push_back(named_program("bit", {k}));
    return out;
}

DominanceEvidence dominance(const WeightFn& f, const WeightFn& g, Nat horizon) {
    DominanceEvidence ev;
    // The least valid N is one past the last violation below the horizon.
    std::optional<Nat> last_violation;
    for (Nat n = 0; n < horizon; ++n) {
        if (f.at(n) > g.at(n)) last_violation = n;
    }
    if (!last_violation) {
        ev.found = true;
        ev.from = 0;
        return ev;
    }
    ev.last_violation = *last_violation;
    if (*last_violation + 1 < horizon) {
        ev.found = true;
        ev.from = *last_violation + 1;
    }
    return ev;
}

TukeyDemoReport tukey_demo(const std::vector<MeasureBlockStreamFn>& witnesses,
                           const std::vector<std::vector<std::pair<std::string, OmegaSet>>>& generators,
                           std::size_t depth, Nat horizon, std::size_t index_budget) {
    if (generators.size() != witnesses.size())
        throw std::invalid_argument("one generator list per witness expected");
    TukeyDemoReport rep;

    for (const auto& w : witnesses) {
        SummableExtensionResult ext = summable_extension(w, depth, index_budget);
        if (!ext.success) {
            rep.diagnostic = ext.diagnostic;
            return rep;
        }
        rep.extensions.push_back(std::move(ext));
    }

    rep.matrix.resize(witnesses.size());
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        for (std::size_t j = 0; j < witnesses.size(); ++j) {
            const auto& fi = rep.extensions[i];
            const auto& fj = rep.extensions[j];
            WeightFn wf{"f" + std::to_string(i), [&fi](Nat n) { return fi.f_at(n); }};
            WeightFn wg{"f" + std::to_string(j), [&fj](Nat n) { return fj.f_at(n); }};
            rep.matrix[i].push_back(dominance(wf, wg, horizon));
        }
    }

    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        for (const auto& [desc, gen] : generators[i]) {
            TukeyDemoReport::InclusionItem item;
            item.witness = i;
            item.generator = desc;
            Rat bound = 0;
            for (const auto& [point, weight] : rep.extensions[i].weight_table) {
                if (gen.contains(point)) bound += weight;
            }
            item.bound = bound;
            rep.inclusions.push_back(std::move(item));
        }
    }
    rep.success = true;
    return rep;
}

} // namespace idealab
