#ifndef IDEALAB_MEASURES_HPP
#define IDEALAB_MEASURES_HPP

#include "idealab/omega_set.hpp"
#include "idealab/rational.hpp"
#include "idealab/submeasure.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

/// A point of the space omega together with the distinguished filter point p.
struct Atom {
    bool is_p = false;
    Nat n = 0;

    static Atom point(Nat n) { return Atom{false, n}; }
    static Atom p() { return Atom{true, 0}; }

    // Naturals first by value; p greatest.
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.is_p != b.is_p) return !a.is_p;
        return !a.is_p && a.n < b.n;
    }
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.is_p == b.is_p && (a.is_p || a.n == b.n);
    }
    std::string str() const { return is_p ? "p" : std::to_string(n); }
};

/// Finitely supported signed rational measure on omega together with p.
/// Weights are nonzero; the norm is the absolute-weight sum.
class FinMeasure {
public:
    FinMeasure() = default;

    static FinMeasure delta(const Atom& a, const Rat& weight);

    void set(const Atom& a, const Rat& weight);  // weight 0 erases
    void add(const Atom& a, const Rat& weight);
    Rat at(const Atom& a) const;

    const std::map<Atom, Rat>& weights() const { return w_; }
    bool is_zero() const { return w_.empty(); }

    Rat norm() const;
    Rat total_mass() const;
    Rat p_weight() const { return at(Atom::p()); }
    bool has_p() const { return w_.count(Atom::p()) > 0; }

    /// Off-p support, as a sorted finite set of naturals.
    FinSet omega_support() const;

    FinMeasure scaled(const Rat& factor) const;
    friend FinMeasure operator+(const FinMeasure& a, const FinMeasure& b);
    friend FinMeasure operator-(const FinMeasure& a, const FinMeasure& b);
    friend bool operator==(const FinMeasure& a, const FinMeasure& b) { return a.w_ == b.w_; }

private:
    std::map<Atom, Rat> w_;
};

/// An element of the algebra generated by an ideal, coded by polarity: small
/// codes are sets in the ideal (p outside); cosmall codes are complements of
/// small sets (p inside).
class ClopenCode {
public:
    enum class Polarity { Small, Cosmall };

    static ClopenCode small(OmegaSet base) { return ClopenCode(Polarity::Small, std::move(base)); }
    static ClopenCode cosmall(OmegaSet base) {
        return ClopenCode(Polarity::Cosmall, std::move(base));
    }
    static ClopenCode whole() { return cosmall(OmegaSet::none()); }
    static ClopenCode empty() { return small(OmegaSet::none()); }

    /// A code carrying its ideal-membership evidence by reference to the
    /// governing ideal. Fr-style finite bases stay plain; infinite bases in a
    /// richer ideal attach the certificate that admitted them.
    static ClopenCode certified_small(OmegaSet base, std::string ideal_name,
                                      MembershipCertificate certificate) {
        ClopenCode c(Polarity::Small, std::move(base));
        c.ideal_name_ = std::move(ideal_name);
        c.certificate_ = std::make_shared<MembershipCertificate>(std::move(certificate));
        return c;
    }
    const std::string& ideal_name() const { return ideal_name_; }
    const MembershipCertificate* certificate() const { return certificate_.get(); }

    Polarity polarity() const { return polarity_; }
    const OmegaSet& base() const { return base_; }

    bool contains(Nat n) const {
        return polarity_ == Polarity::Small ? base_.contains(n) : !base_.contains(n);
    }
    bool contains_p() const { return polarity_ == Polarity::Cosmall; }

    /// Complement flips polarity and keeps the base (and its certificate).
    ClopenCode complement() const {
        ClopenCode c(polarity_ == Polarity::Small ? Polarity::Cosmall : Polarity::Small, base_);
        c.ideal_name_ = ideal_name_;
        c.certificate_ = certificate_;
        return c;
    }
    std::string describe() const;

private:
    ClopenCode(Polarity pol, OmegaSet base) : polarity_(pol), base_(std::move(base)) {}
    Polarity polarity_;
    OmegaSet base_;
    std::string ideal_name_;
    std::shared_ptr<const MembershipCertificate> certificate_;
};

/// Exact value of the measure on the coded clopen: the weights at naturals
/// inside it, plus the p weight when the code contains p.
Rat measure_eval(const FinMeasure& mu, const ClopenCode& a);

/// Keeps exactly the weights at points inside the code.
FinMeasure restrict_measure(const FinMeasure& mu, const ClopenCode& a);

/// n * (delta at the n-th point minus delta at p); norm 2n, total mass 0.
FinMeasure delta_pair_witness(const std::function<Nat(std::size_t)>& points, std::size_t n);

/// For each non-negative p-free input mu: (total mass of mu) * delta_p - mu;
/// total mass 0, norm twice the input's.
std::vector<FinMeasure> nf_strong_witness(const std::vector<FinMeasure>& mus);

// ---- extension of ideal-side measures ---------------------------------------

/// A signed weight stream on omega, absolutely summable, with exactly
/// computable tail bounds and (when available) closed-form totals.
struct WeightStream {
    std::string name;
    std::function<Rat(Nat)> at;
    /// m -> exact upper bound on the absolute tail beyond [0, m); empty when
    /// no closed form is available.
    std::function<Rat(Nat)> abs_tail_bound;
    std::optional<Rat> exact_total;      // sum of w
    std::optional<Rat> exact_abs_total;  // sum of |w|

    static WeightStream geometric_half();  // w(n) = 2^-(n+1)
    static WeightStream finitely_supported(std::vector<std::pair<Nat, Rat>> weights);

    Rat prefix_sum(Nat h) const;
    Rat prefix_abs_sum(Nat h) const;
};

struct ExtendValue {
    bool exact = false;
    Rat value;  // meaningful when exact
    Rat lo, hi; // enclosing interval otherwise
};

/// T_alpha: the ideal-side measure extended to the generated algebra. Small
/// codes evaluate to mu(A); cosmall codes to -mu(base) + alpha. Exact whenever
/// the relevant base sums are exactly computable; otherwise an interval from
/// the declared tail bound.
ExtendValue extend_T(const WeightStream& mu, const Rat& alpha, const ClopenCode& a, Nat horizon);

struct ExtensionBoundsReport {
    bool sandwich_ok = false;
    bool monotone_ok = false;
    Rat horizon_norm;                  // variation over subsets of [0, horizon)
    Rat lower;                         // max(prefix abs sum, |alpha|)
    std::optional<Rat> upper;          // 2 * (abs total + |alpha|) when the total is exact
    std::optional<Rat> decomposition;  // abs total + |alpha - total| when totals are exact
    bool decomposition_ok = true;
    std::vector<Rat> norms_by_horizon; // one per requested horizon, nondecreasing
};

/// Sandwich and norm-decomposition check at the given horizons (lower
/// approximations only). sample_sets may add further complementary pairs to
/// the sup; each is truncated to the final horizon.
ExtensionBoundsReport extension_bounds_check(const WeightStream& mu, const Rat& alpha,
                                             const std::vector<Nat>& horizons,
                                             const std::vector<OmegaSet>& sample_sets = {});

// ---- sequence contracts -------------------------------------------------------

struct AntiNikodymParams {
    std::vector<Rat> growth_targets;
    std::vector<Rat> epsilons;
};

struct SequenceContractReport {
    // (1) p outside every support
    bool supports_clear = true;
    std::optional<std::size_t> support_violation;

    // (2) norms exceed every supplied target somewhere in the window
    struct TargetHit {
        Rat target;
        bool hit = false;
        std::size_t index = 0;
        Rat norm;
    };
    std::vector<TargetHit> growth;
    bool growth_ok = true;

    // (3) per test set and epsilon: a tail of the window stays below epsilon
    struct TailCheck {
        std::size_t test_index = 0;
        Rat epsilon;
        bool ok = false;
        std::size_t from = 0;       // first index of the compliant tail
        Rat worst_value;            // largest |value| in the compliant tail (or the blocker)
    };
    std::vector<TailCheck> tails;
    bool tails_ok = true;

    bool all() const { return supports_clear && growth_ok && tails_ok; }
};

/// Checks the three-part sequence contract on a finite window: supports avoid
/// p; norms eventually exceed every growth target; values on the complement of
/// each test neighborhood fall below every epsilon. Test codes must be cosmall
/// (neighborhoods of p); the evaluated sets are their small complements.
SequenceContractReport anti_nikodym_contract(const std::vector<FinMeasure>& seq,
                                             const std::vector<ClopenCode>& test_family,
                                             const AntiNikodymParams& params);

/// The bounded-mass variant of the sequence contract: norms exceed every
/// growth target while the total masses stay within mass_bound and the norm
/// restricted to each supplied small set stays within restricted_bound.
struct BoundedContractReport {
    std::vector<SequenceContractReport::TargetHit> growth;
    bool growth_ok = true;
    bool mass_ok = true;
    Rat worst_mass;
    std::size_t mass_violation = 0;
    struct RestrictedCheck {
        std::size_t set_index = 0;
        bool ok = true;
        Rat worst_norm;
        std::size_t violation = 0;
    };
    std::vector<RestrictedCheck> restricted;
    bool restricted_ok = true;
    bool all() const { return growth_ok && mass_ok && restricted_ok; }
};

BoundedContractReport bounded_mass_contract(const std::vector<FinMeasure>& seq,
                                            const std::vector<ClopenCode>& small_sets,
                                            const std::vector<Rat>& growth_targets,
                                            const Rat& mass_bound, const Rat& restricted_bound);

} // namespace idealab

#endif
