#ifndef IDEALAB_SUBMEASURE_HPP
#define IDEALAB_SUBMEASURE_HPP

#include "idealab/omega_set.hpp"
#include "idealab/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

enum class StructureTag {
    Generic,
    Summable,
    Density,
    GeneralizedDensity,
    AsymptoticDensity,
    ErdosUlam,
    TraceNull,
    Hypergraph,
};

std::string structure_tag_name(StructureTag tag);

/// Non-negative weight stream with a registered name (so descriptors stay
/// serializable and runs replayable).
struct WeightFn {
    std::string name;
    std::function<Rat(Nat)> at;
};

/// A finitely supported non-negative measure: one block of a density
/// submeasure.
struct MeasureBlock {
    FinSet support;             // sorted
    std::vector<Rat> weights;   // parallel to support, positive

    Rat mass() const;
    Rat value_on(const FinSet& points) const;  // measure of points /\ support
    Nat lo() const { return support.empty() ? 0 : support.front(); }
    Nat hi() const { return support.empty() ? 0 : support.back() + 1; }
};

/// Stream of measure blocks in increasing position order; nullopt ends a
/// finite stream.
using MeasureBlockStreamFn = std::function<std::optional<MeasureBlock>(std::size_t)>;

/// Structural access for block-structured submeasures. A full block lying
/// beyond a cut gives an exact lower bound on the tail value, which is the
/// only sound source of negative (ExhNo) membership evidence.
class BlockwiseView {
public:
    virtual ~BlockwiseView() = default;
    virtual std::optional<std::size_t> block_count() const = 0;
    virtual Nat block_lo(std::size_t k) const = 0;
    virtual Nat block_hi(std::size_t k) const = 0;
    /// Exact value the k-th component assigns to A.
    virtual Rat block_value(std::size_t k, const OmegaSet& A) const = 0;
};

class SubmeasureImpl {
public:
    virtual ~SubmeasureImpl() = default;
    virtual Rat eval(const FinSet& f) const = 0;
    virtual StructureTag tag() const = 0;
    virtual const BlockwiseView* blockwise() const { return nullptr; }
    /// A structural upper bound on all values, when one exists (e.g. 1 for
    /// ratio-valued families).
    virtual std::optional<Rat> global_bound() const { return std::nullopt; }
    virtual std::string describe() const = 0;
};

/// A submeasure descriptor evaluable exactly on finite sets. Lower
/// semicontinuity is structural: infinite-set values exist only as horizon
/// suprema, never as a number returned by this type.
class Submeasure {
public:
    explicit Submeasure(std::shared_ptr<const SubmeasureImpl> impl) : impl_(std::move(impl)) {}

    Rat eval(const FinSet& f) const { return impl_->eval(f); }
    StructureTag tag() const { return impl_->tag(); }
    const BlockwiseView* blockwise() const { return impl_->blockwise(); }
    std::optional<Rat> global_bound() const { return impl_->global_bound(); }
    std::string describe() const { return impl_->describe(); }

private:
    std::shared_ptr<const SubmeasureImpl> impl_;
};

// ---- family constructors -------------------------------------------------

/// mu_f(A) = sum over n in A of f(n); finitely additive, lsc.
Submeasure make_summable(WeightFn f);

/// The counting measure (summable with weight 1).
Submeasure make_counting();

/// sup over blocks of finitely supported measures with disjoint supports.
Submeasure make_density(MeasureBlockStreamFn blocks, std::string name = "density");
Submeasure make_density(std::vector<MeasureBlock> blocks, std::string name = "density");

/// phi_d(A) = sup_n |A /\ [2^n, 2^{n+1})| / 2^n.
Submeasure make_asymptotic_density();

/// Weighted prefix-ratio functional: eval(F) = sup over horizons h of
/// (sum of f over F /\ [0,h)) / (sum of f over [0,h)). f must be positive.
Submeasure make_erdos_ulam(WeightFn f);

/// Cylinder measure of string sets under the length-lexicographic coding of
/// binary strings as naturals.
Submeasure make_trace_null();

/// Report on a candidate ratio function: the prefix-sum ratios f(n)/S(n+1) at
/// the tested horizons, plus verification of a user-supplied divergence
/// witness schedule (horizon -> claimed lower bound on the partial sum).
struct ErdosUlamFunctionReport {
    bool weights_positive = true;
    Nat first_bad_weight = 0;
    std::vector<std::pair<Nat, Rat>> ratios;       // (n, f(n)/S(n+1)), exact
    bool divergence_ok = true;                     // every scheduled bound met
    std::vector<std::pair<Nat, Rat>> partial_sums; // (horizon, S(horizon))
};

ErdosUlamFunctionReport check_erdos_ulam_function(
    const WeightFn& f, const std::vector<Nat>& ratio_horizons,
    const std::vector<std::pair<Nat, Rat>>& divergence_schedule);

/// sup over finite domains X_n (a partition of omega) of component values
/// scaled per domain; components see only their own domain.
struct GeneralizedDensityComponent {
    Nat domain_lo = 0;
    Nat domain_hi = 0;  // exclusive
    std::function<Rat(const FinSet&)> eval;  // sees A /\ [domain_lo, domain_hi)
};
Submeasure make_generalized_density(std::vector<GeneralizedDensityComponent> components,
                                    std::string name = "generalized-density");

/// Explicit table on the subsets of a small domain; points outside the domain
/// are invisible. Used for hand-built fixtures.
Submeasure make_table(FinSet domain, std::function<Rat(const FinSet&)> table,
                      std::string name = "table");

// ---- trace-null native domain helpers --------------------------------------

/// Length-lexicographic bijection between naturals and finite binary strings
/// (0 <-> empty string).
std::string nat_to_binary_string(Nat n);
Nat binary_string_to_nat(const std::string& s);

/// Exact Lebesgue measure of the union of cylinders [s], s in the set.
Rat cylinder_measure(const std::vector<std::string>& strings);

// ---- operations -------------------------------------------------------------

/// phi(A /\ [0,n)); nondecreasing in n.
Rat eval_prefix(const Submeasure& phi, const OmegaSet& a, Nat n);

/// phi((A /\ [0,n)) \ [0,m)); requires m <= n.
Rat core_estimate(const Submeasure& phi, const OmegaSet& a, Nat m, Nat n);

enum class CertKind { ExhYes, ExhNo, FinYes, ZeroYes, Unknown };

std::string cert_kind_name(CertKind k);

struct CertSample {
    Nat m = 0;
    Nat n = 0;       // horizon, or block index for block-witness samples
    Rat value;
    std::string note;
};

/// Replayable three-valued membership evidence. Re-evaluating the recorded
/// finite sets reproduces the recorded rationals exactly.
struct MembershipCertificate {
    CertKind kind = CertKind::Unknown;
    Rat epsilon;
    Nat witness_m = 0;
    std::vector<CertSample> samples;
    std::string note;

    bool replay(const Submeasure& phi, const OmegaSet& a) const;
};

struct SchedulePair {
    Nat m = 0;
    Nat n = 0;
};

/// Budgeted Exh membership. ExhYes when some scheduled m keeps every tested
/// tail value below epsilon; ExhNo only when a block-structured family shows
/// an exact full-block lower bound >= epsilon beyond every tested m; Unknown
/// otherwise.
MembershipCertificate exh_certificate(const Submeasure& phi, const OmegaSet& a, const Rat& epsilon,
                                      const std::vector<SchedulePair>& schedule);

/// Default geometric schedule up to the horizon.
std::vector<SchedulePair> default_schedule(Nat horizon);

/// Positive zero-value evidence. Exact (ZeroYes) only when the family is
/// block-structured with a finite stream fully inspected; otherwise Unknown.
MembershipCertificate zero_certificate(const Submeasure& phi, const OmegaSet& a, Nat horizon);

/// FinYes when the value is exactly finite by structure: finite sets evaluate
/// exactly, and globally bounded families are finite everywhere.
MembershipCertificate fin_certificate(const Submeasure& phi, const OmegaSet& a, Nat horizon);

struct UnboundedWitness {
    bool success = false;
    FinSet set;            // on success: finite F inside the target set
    Rat achieved;          // value reached (best value on failure)
    Nat horizon_used = 0;
};

/// Searches for a finite F inside `inside` with phi(F) >= target; explores
/// prefixes up to the budget horizon and trims to the least sufficient prefix.
UnboundedWitness unbounded_witness(const Submeasure& phi, const OmegaSet& inside, const Rat& target,
                                   Nat budget);

/// phi(F) minus the best measure dominated by phi on F's subsets, solved as an
/// exact rational linear program; |F| <= 15.
Rat nonpath_gap(const Submeasure& phi, const FinSet& f);

// ---- shared weight registry -------------------------------------------------

/// Named weight streams: "reciprocal" 1/(n+1), "one", "geometric" 2^-(n+1),
/// "pow2" 2^-n, "linear" n.
WeightFn weight_by_name(const std::string& name);

/// Preset block streams for density families: "mass_k" (block k carries total
/// mass k on 2^k fresh points), "mass_n2n_plus_1" (mass n*2^n + 1), and
/// "bounded_unit" (every block carries mass 1).
MeasureBlockStreamFn preset_block_stream(const std::string& name);

} // namespace idealab

#endif
