#include "idealab/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace idealab {

FinMeasure FinMeasure::delta(const Atom& a, const Rat& weight) {
    FinMeasure m;
    m.set(a, weight);
    return m;
}

void FinMeasure::set(const Atom& a, const Rat& weight) {
    if (weight == 0) w_.erase(a);
    else w_[a] = weight;
}

void FinMeasure::add(const Atom& a, const Rat& weight) {
    auto it = w_.find(a);
    if (it == w_.end()) {
        if (weight != 0) w_[a] = weight;
        return;
    }
    it->second += weight;
    if (it->second == 0) w_.erase(it);
}

Rat FinMeasure::at(const Atom& a) const {
    auto it = w_.find(a);
    return it == w_.end() ? Rat(0) : it->second;
}

Rat FinMeasure::norm() const {
    Rat total = 0;
    for (const auto& [a, w] : w_) total += rat_abs(w);
    return total;
}

Rat FinMeasure::total_mass() const {
    Rat total = 0;
    for (const auto& [a, w] : w_) total += w;
    return total;
}

FinSet FinMeasure::omega_support() const {
    FinSet out;
    for (const auto& [a, w] : w_) {
        if (!a.is_p) out.push_back(a.n);
    }
    return out;
}

FinMeasure FinMeasure::scaled(const Rat& factor) const {
    FinMeasure out;
    if (factor == 0) return out;
    for (const auto& [a, w] : w_) out.w_[a] = w * factor;
    return out;
}

FinMeasure operator+(const FinMeasure& a, const FinMeasure& b) {
    FinMeasure out = a;
    for (const auto& [atom, w] : b.w_) out.add(atom, w);
    return out;
}

FinMeasure operator-(const FinMeasure& a, const FinMeasure& b) {
    FinMeasure out = a;
    for (const auto& [atom, w] : b.w_) out.add(atom, -w);
    return out;
}

std::string ClopenCode::describe() const {
    return (polarity_ == Polarity::Small ? "small:" : "cosmall:") + base_.describe();
}

Rat measure_eval(const FinMeasure& mu, const ClopenCode& a) {
    Rat total = 0;
    for (const auto& [atom, w] : mu.weights()) {
        if (atom.is_p) {
            if (a.contains_p()) total += w;
        } else if (a.contains(atom.n)) {
            total += w;
        }
    }
    return total;
}

FinMeasure restrict_measure(const FinMeasure& mu, const ClopenCode& a) {
    FinMeasure out;
    for (const auto& [atom, w] : mu.weights()) {
        bool inside = atom.is_p ? a.contains_p() : a.contains(atom.n);
        if (inside) out.set(atom, w);
    }
    return out;
}

FinMeasure delta_pair_witness(const std::function<Nat(std::size_t)>& points, std::size_t n) {
    FinMeasure m;
    Rat scale = Rat(BigInt(n));
    m.add(Atom::point(points(n)), scale);
    m.add(Atom::p(), -scale);
    return m;
}

std::vector<FinMeasure> nf_strong_witness(const std::vector<FinMeasure>& mus) {
    std::vector<FinMeasure> out;
    out.reserve(mus.size());
    for (const auto& mu : mus) {
        if (mu.has_p()) throw std::invalid_argument("input measures must be p-free");
        for (const auto& [a, w] : mu.weights()) {
            if (w < 0) throw std::invalid_argument("input measures must be non-negative");
        }
        FinMeasure nu = FinMeasure::delta(Atom::p(), mu.total_mass()) - mu;
        out.push_back(std::move(nu));
    }
    return out;
}

// ---- weight streams --------------------------------------------------------

WeightStream WeightStream::geometric_half() {
    WeightStream w;
    w.name = "geometric";
    w.at = [](Nat n) { return pow2_inv(static_cast<unsigned>(n) + 1); };
    w.abs_tail_bound = [](Nat m) { return pow2_inv(static_cast<unsigned>(m)); };
    w.exact_total = Rat(1);
    w.exact_abs_total = Rat(1);
    return w;
}

WeightStream WeightStream::finitely_supported(std::vector<std::pair<Nat, Rat>> weights) {
    auto table = std::make_shared<std::map<Nat, Rat>>();
    Rat total = 0, abs_total = 0;
    Nat last = 0;
    for (auto& [n, w] : weights) {
        if (w == 0) continue;
        (*table)[n] += w;
        last = std::max(last, n + 1);
    }
    for (const auto& [n, w] : *table) {
        total += w;
        abs_total += rat_abs(w);
    }
    WeightStream ws;
    ws.name = "finite-support";
    ws.at = [table](Nat n) {
        auto it = table->find(n);
        return it == table->end() ? Rat(0) : it->second;
    };
    ws.abs_tail_bound = [table, last](Nat m) {
        Rat tail = 0;
        if (m >= last) return tail;
        for (auto it = table->lower_bound(m); it != table->end(); ++it) tail += rat_abs(it->second);
        return tail;
    };
    ws.exact_total = total;
    ws.exact_abs_total = abs_total;
    return ws;
}

Rat WeightStream::prefix_sum(Nat h) const {
    Rat total = 0;
    for (Nat n = 0; n < h; ++n) total += at(n);
    return total;
}

Rat WeightStream::prefix_abs_sum(Nat h) const {
    Rat total = 0;
    for (Nat n = 0; n < h; ++n) total += rat_abs(at(n));
    return total;
}

ExtendValue extend_T(const WeightStream& mu, const Rat& alpha, const ClopenCode& a, Nat horizon) {
    // The base sum is exact for finite bases; for other variants the prefix
    // plus the declared tail bound yields an interval (exact only if the tail
    // bound is zero).
    auto base_sum = [&](const OmegaSet& base) -> ExtendValue {
        ExtendValue v;
        if (base.kind() == OmegaSet::Kind::Finite) {
            Rat s = 0;
            for (Nat n : base.finite_elements()) s += mu.at(n);
            v.exact = true;
            v.value = v.lo = v.hi = s;
            return v;
        }
        if (base.kind() == OmegaSet::Kind::Cofinite && mu.exact_total) {
            Rat excluded = 0;
            for (Nat n : base.cofinite_excluded()) excluded += mu.at(n);
            Rat s = *mu.exact_total - excluded;
            v.exact = true;
            v.value = v.lo = v.hi = s;
            return v;
        }
        Rat head = 0;
        for (Nat n : base.prefix(horizon)) head += mu.at(n);
        if (!mu.abs_tail_bound) {
            v.exact = false;
            v.lo = v.hi = head;
            return v;  // interval degenerate but flagged inexact: no tail information
        }
        Rat tail = mu.abs_tail_bound(horizon);
        v.exact = tail == 0;
        v.value = head;
        v.lo = head - tail;
        v.hi = head + tail;
        return v;
    };

    ExtendValue inner = base_sum(a.base());
    if (a.polarity() == ClopenCode::Polarity::Small) return inner;
    ExtendValue v;
    v.exact = inner.exact;
    v.value = -inner.value + alpha;
    v.lo = -inner.hi + alpha;
    v.hi = -inner.lo + alpha;
    return v;
}

ExtensionBoundsReport extension_bounds_check(const WeightStream& mu, const Rat& alpha,
                                             const std::vector<Nat>& horizons,
                                             const std::vector<OmegaSet>& sample_sets) {
    if (horizons.empty()) throw std::invalid_argument("at least one horizon required");

    ExtensionBoundsReport rep;
    // Variation over complementary pairs (A, A^c) with A a finite subset of
    // [0,h): the value |mu(A)| + |alpha - mu(A)| is convex in mu(A), so the
    // extremes over achievable subset sums (all positives / all negatives)
    // realize the sup.
    auto norm_at = [&](Nat h) {
        Rat s_max = 0, s_min = 0;
        for (Nat n = 0; n < h; ++n) {
            Rat w = mu.at(n);
            if (w > 0) s_max += w;
            else s_min += w;
        }
        auto f = [&](const Rat& s) { return rat_abs(s) + rat_abs(alpha - s); };
        return std::max(f(s_max), f(s_min));
    };

    Nat last_h = 0;
    rep.monotone_ok = true;
    for (Nat h : horizons) {
        rep.norms_by_horizon.push_back(norm_at(h));
        last_h = std::max(last_h, h);
    }
    for (std::size_t i = 1; i < rep.norms_by_horizon.size(); ++i) {
        if (horizons[i] >= horizons[i - 1] &&
            rep.norms_by_horizon[i] < rep.norms_by_horizon[i - 1])
            rep.monotone_ok = false;
    }
    rep.horizon_norm = rep.norms_by_horizon.back();
    for (Nat h : horizons) rep.horizon_norm = std::max(rep.horizon_norm, norm_at(h));

    // Sampled complementary pairs, truncated to the last horizon.
    for (const OmegaSet& s : sample_sets) {
        Rat v = 0;
        for (Nat n : s.prefix(last_h)) v += mu.at(n);
        Rat pair_value = rat_abs(v) + rat_abs(alpha - v);
        rep.horizon_norm = std::max(rep.horizon_norm, pair_value);
    }

    rep.lower = std::max(mu.prefix_abs_sum(last_h), rat_abs(alpha));
    if (mu.exact_abs_total) {
        rep.upper = Rat(2) * (*mu.exact_abs_total + rat_abs(alpha));
        rep.sandwich_ok = rep.lower <= rep.horizon_norm && rep.horizon_norm <= *rep.upper;
    } else {
        rep.sandwich_ok = rep.lower <= rep.horizon_norm;
    }

    if (mu.exact_total && mu.exact_abs_total && mu.abs_tail_bound &&
        mu.abs_tail_bound(last_h) == 0) {
        // Entire support inspected: the variation equals the norm
        // decomposition into the off-p part plus the atom at p.
        rep.decomposition = *mu.exact_abs_total + rat_abs(alpha - *mu.exact_total);
        rep.decomposition_ok = rep.horizon_norm == *rep.decomposition;
    }
    return rep;
}

BoundedContractReport bounded_mass_contract(const std::vector<FinMeasure>& seq,
                                            const std::vector<ClopenCode>& small_sets,
                                            const std::vector<Rat>& growth_targets,
                                            const Rat& mass_bound, const Rat& restricted_bound) {
    BoundedContractReport rep;
    for (const Rat& target : growth_targets) {
        SequenceContractReport::TargetHit hit;
        hit.target = target;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            Rat n = seq[i].norm();
            if (n > target) {
                hit.hit = true;
                hit.index = i;
                hit.norm = n;
                break;
            }
        }
        if (!hit.hit) rep.growth_ok = false;
        rep.growth.push_back(std::move(hit));
    }

    rep.worst_mass = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Rat m = rat_abs(seq[i].total_mass());
        if (m > rep.worst_mass) {
            rep.worst_mass = m;
            rep.mass_violation = i;
        }
    }
    rep.mass_ok = rep.worst_mass <= mass_bound;

    for (std::size_t s = 0; s < small_sets.size(); ++s) {
        if (small_sets[s].polarity() != ClopenCode::Polarity::Small)
            throw std::invalid_argument("restricted-norm sets must be small codes");
        BoundedContractReport::RestrictedCheck check;
        check.set_index = s;
        check.worst_norm = 0;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            Rat n = restrict_measure(seq[i], small_sets[s]).norm();
            if (n > check.worst_norm) {
                check.worst_norm = n;
                check.violation = i;
            }
        }
        check.ok = check.worst_norm <= restricted_bound;
        if (!check.ok) rep.restricted_ok = false;
        rep.restricted.push_back(std::move(check));
    }
    return rep;
}

SequenceContractReport anti_nikodym_contract(const std::vector<FinMeasure>& seq,
                                             const std::vector<ClopenCode>& test_family,
                                             const AntiNikodymParams& params) {
    SequenceContractReport rep;

    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i].has_p()) {
            rep.supports_clear = false;
            rep.support_violation = i;
            break;
        }
    }

    for (const Rat& target : params.growth_targets) {
        SequenceContractReport::TargetHit hit;
        hit.target = target;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            Rat n = seq[i].norm();
            if (n > target) {
                hit.hit = true;
                hit.index = i;
                hit.norm = n;
                break;
            }
        }
        if (!hit.hit) rep.growth_ok = false;
        rep.growth.push_back(std::move(hit));
    }

    for (std::size_t t = 0; t < test_family.size(); ++t) {
        if (test_family[t].polarity() != ClopenCode::Polarity::Cosmall)
            throw std::invalid_argument("test codes must be cosmall neighborhoods of p");
        ClopenCode outside = test_family[t].complement();
        std::vector<Rat> values;
        values.reserve(seq.size());
        for (const auto& mu : seq) values.push_back(rat_abs(measure_eval(mu, outside)));
        for (const Rat& eps : params.epsilons) {
            SequenceContractReport::TailCheck check;
            check.test_index = t;
            check.epsilon = eps;
            // Least window index from which every later value stays below eps.
            std::size_t from = seq.size();
            for (std::size_t i = seq.size(); i-- > 0;) {
                if (values[i] < eps) from = i;
                else break;
            }
            if (from < seq.size()) {
                check.ok = true;
                check.from = from;
                Rat worst = 0;
                for (std::size_t i = from; i < seq.size(); ++i) worst = std::max(worst, values[i]);
                check.worst_value = worst;
            } else {
                check.ok = false;
                check.worst_value = values.empty() ? Rat(0) : values.back();
                rep.tails_ok = false;
            }
            rep.tails.push_back(std::move(check));
        }
    }
    return rep;
}

} // namespace idealab
