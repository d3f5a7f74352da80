#ifndef IDEALAB_ORDERS_HPP
#define IDEALAB_ORDERS_HPP

#include "idealab/constructions.hpp"
#include "idealab/omega_set.hpp"
#include "idealab/submeasure.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

struct Budget {
    Nat horizon = 1 << 12;
    Rat epsilon = Rat(1, 100);
};

/// Positive evidence grades for membership; any other kind is negative or
/// inconclusive.
bool cert_is_positive(CertKind k);
bool cert_is_negative(CertKind k);

/// A named ideal with a budgeted membership procedure and documented
/// generators known to be members.
class IdealHandle {
public:
    using MemberFn = std::function<MembershipCertificate(const OmegaSet&, const Budget&)>;

    IdealHandle(std::string name, MemberFn member) : name_(std::move(name)), member_(std::move(member)) {}

    const std::string& name() const { return name_; }
    MembershipCertificate member(const OmegaSet& a, const Budget& budget) const {
        return member_(a, budget);
    }

    void add_generator(std::string description, OmegaSet g) {
        generators_.emplace_back(std::move(description), std::move(g));
    }
    const std::vector<std::pair<std::string, OmegaSet>>& generators() const { return generators_; }

private:
    std::string name_;
    MemberFn member_;
    std::vector<std::pair<std::string, OmegaSet>> generators_;
};

/// Handle for the tail-vanishing ideal of a submeasure, with the budget's
/// epsilon and default schedule.
IdealHandle exh_ideal_handle(std::string name, Submeasure phi);

/// The built-in catalog: finite sets, the two density-zero ideals, the
/// reciprocal summable ideal, an unbounded block-density family, the cylinder
/// trace ideal, and a selected hypergraph family. Each ships with documented
/// generators.
std::vector<IdealHandle> standard_catalog();
IdealHandle catalog_ideal(const std::string& name);

struct KatetovMap {
    std::string name;
    std::function<Nat(Nat)> at;

    static KatetovMap identity() {
        return {"identity", [](Nat n) { return n; }};
    }
};

struct KatetovItemReport {
    std::string generator;
    MembershipCertificate cert;  // membership of the preimage in the target ideal
};

struct KatetovReport {
    enum class Overall { EvidencePositive, Falsified, Inconclusive };
    Overall overall = Overall::Inconclusive;
    std::vector<KatetovItemReport> items;
};

/// For each generator A of `from`: the preimage under the map is asked for
/// membership in `to`. A single negative certificate falsifies; all-positive
/// gives reduction evidence.
KatetovReport katetov_verify(const IdealHandle& from, const IdealHandle& to, const KatetovMap& map,
                             const Budget& budget);

/// A named filter (dual view): membership of A is membership of the
/// complement in the underlying ideal.
class FilterHandle {
public:
    using MemberFn = std::function<MembershipCertificate(const OmegaSet&, const Budget&)>;
    FilterHandle(std::string name, MemberFn member)
        : name_(std::move(name)), member_(std::move(member)) {}

    const std::string& name() const { return name_; }
    MembershipCertificate member(const OmegaSet& a, const Budget& b) const { return member_(a, b); }

private:
    std::string name_;
    MemberFn member_;
};

FilterHandle dual_filter(const IdealHandle& ideal);

struct DirectSumVerdict {
    MembershipCertificate first;
    MembershipCertificate second;
    enum class Overall { Member, Falsified, Inconclusive } overall = Overall::Inconclusive;
};

/// Direct sum of two filters along a partition of omega: membership is the
/// conjunction of both traced component certificates. part_one is the first
/// part of the partition; embed_one/embed_two are the bijections onto the
/// parts.
FilterHandle direct_sum(const FilterHandle& f1, const FilterHandle& f2, const OmegaSet& part_one,
                        const std::function<Nat(Nat)>& embed_one,
                        const std::function<Nat(Nat)>& embed_two);

/// The verdict breakdown on one set (for reports).
DirectSumVerdict direct_sum_eval(const FilterHandle& f1, const FilterHandle& f2,
                                 const OmegaSet& part_one, const std::function<Nat(Nat)>& embed_one,
                                 const std::function<Nat(Nat)>& embed_two, const OmegaSet& a,
                                 const Budget& budget);

struct SplittingItem {
    std::size_t test_index = 0;
    bool split = false;
    bool precondition_ok = true;  // the test itself fails membership at budget
    std::size_t splitter = 0;     // index into the family when split
    MembershipCertificate left;   // A /\ B
    MembershipCertificate right;  // A \ B
};

struct SplittingReport {
    std::vector<SplittingItem> items;
    bool all_split() const {
        for (const auto& i : items)
            if (!i.split) return false;
        return !items.empty();
    }
};

/// For each test set: find a family member splitting it into two pieces that
/// both carry negative membership evidence against the ideal.
SplittingReport splitting_check(const std::vector<OmegaSet>& family, const IdealHandle& ideal,
                                const std::vector<OmegaSet>& tests, const Budget& budget);

/// The standard bit-slice splitting family: member k is the set of naturals
/// with bit k set.
std::vector<OmegaSet> bit_slice_family(std::size_t bits);

struct DominanceEvidence {
    bool found = false;
    Nat from = 0;            // least N with f <= g on [N, horizon)
    Nat last_violation = 0;  // meaningful when found and from > 0, or when falsified
};

/// Eventual dominance at a horizon: the least N below the horizon from which
/// f(n) <= g(n) holds up to the horizon, or falsified-at-horizon.
DominanceEvidence dominance(const WeightFn& f, const WeightFn& g, Nat horizon);

struct TukeyDemoReport {
    bool success = false;
    std::string diagnostic;
    std::vector<SummableExtensionResult> extensions;
    std::vector<std::vector<DominanceEvidence>> matrix;  // dominance of f_i by f_j
    struct InclusionItem {
        std::size_t witness = 0;
        std::string generator;
        Rat bound;  // exact sum of the extracted weight over the generator
    };
    std::vector<InclusionItem> inclusions;
};

/// Maps each unbounded block family to its extracted summable weight, then
/// reports the pairwise eventual-dominance matrix and, per witness and
/// generator, the exact weight-sum bound witnessing inclusion into the
/// extracted summable ideal.
TukeyDemoReport tukey_demo(const std::vector<MeasureBlockStreamFn>& witnesses,
                           const std::vector<std::vector<std::pair<std::string, OmegaSet>>>& generators,
                           std::size_t depth, Nat horizon, std::size_t index_budget);

} // namespace idealab

#endif
