#include "idealab/submeasure.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace idealab {

std::string structure_tag_name(StructureTag tag) {
    switch (tag) {
        case StructureTag::Generic: return "generic";
        case StructureTag::Summable: return "summable";
        case StructureTag::Density: return "density";
        case StructureTag::GeneralizedDensity: return "generalized_density";
        case StructureTag::AsymptoticDensity: return "asymptotic_density";
        case StructureTag::ErdosUlam: return "erdos_ulam";
        case StructureTag::TraceNull: return "trace_null";
        case StructureTag::Hypergraph: return "hypergraph";
    }
    return "generic";
}

Rat MeasureBlock::mass() const {
    Rat total = 0;
    for (const Rat& w : weights) total += w;
    return total;
}

Rat MeasureBlock::value_on(const FinSet& points) const {
    Rat total = 0;
    std::size_t i = 0, j = 0;
    while (i < support.size() && j < points.size()) {
        if (support[i] < points[j]) ++i;
        else if (points[j] < support[i]) ++j;
        else {
            total += weights[i];
            ++i;
            ++j;
        }
    }
    return total;
}

namespace {

// ---- summable ----------------------------------------------------------

class SummableSub final : public SubmeasureImpl, public BlockwiseView {
public:
    explicit SummableSub(WeightFn f) : f_(std::move(f)) {}

    Rat eval(const FinSet& f) const override {
        Rat total = 0;
        for (Nat n : f) total += f_.at(n);
        return total;
    }
    StructureTag tag() const override { return StructureTag::Summable; }
    const BlockwiseView* blockwise() const override { return this; }
    std::string describe() const override { return "summable(" + f_.name + ")"; }

    // Singleton blocks {k} with weight f(k).
    std::optional<std::size_t> block_count() const override { return std::nullopt; }
    Nat block_lo(std::size_t k) const override { return k; }
    Nat block_hi(std::size_t k) const override { return k + 1; }
    Rat block_value(std::size_t k, const OmegaSet& a) const override {
        return a.contains(k) ? f_.at(k) : Rat(0);
    }

private:
    WeightFn f_;
};

// ---- density -------------------------------------------------------------

class DensitySub final : public SubmeasureImpl, public BlockwiseView {
public:
    DensitySub(MeasureBlockStreamFn blocks, std::string name, StructureTag tag)
        : blocks_(std::move(blocks)), name_(std::move(name)), tag_(tag) {}

    Rat eval(const FinSet& f) const override {
        Rat best = 0;
        if (f.empty()) return best;
        Nat limit = f.back() + 1;
        for (std::size_t k = 0;; ++k) {
            const MeasureBlock* b = block_at(k);
            if (!b) break;
            if (b->lo() >= limit) break;
            Rat v = b->value_on(f);
            if (v > best) best = v;
        }
        return best;
    }
    StructureTag tag() const override { return tag_; }
    const BlockwiseView* blockwise() const override { return this; }
    std::string describe() const override { return name_; }

    std::optional<std::size_t> block_count() const override {
        // Probe forward; a stream still producing past the probe bound counts
        // as unbounded.
        for (std::size_t k = 0;; ++k) {
            const MeasureBlock* b = block_at(k);
            if (!b) break;
            if (b->lo() > (Nat{1} << 20)) return std::nullopt;
        }
        return finite_count_;
    }
    Nat block_lo(std::size_t k) const override { return require_block(k)->lo(); }
    Nat block_hi(std::size_t k) const override { return require_block(k)->hi(); }
    Rat block_value(std::size_t k, const OmegaSet& a) const override {
        const MeasureBlock* b = require_block(k);
        FinSet pts;
        for (Nat x : b->support) {
            if (a.contains(x)) pts.push_back(x);
        }
        return b->value_on(pts);
    }

    const MeasureBlock* block_at(std::size_t k) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (cache_.size() <= k) {
            if (finite_count_) return nullptr;
            auto b = blocks_(cache_.size());
            if (!b) {
                finite_count_ = cache_.size();
                return nullptr;
            }
            if (!cache_.empty() && b->lo() < cache_.back().hi())
                throw std::invalid_argument("density blocks out of order");
            cache_.push_back(std::move(*b));
        }
        return &cache_[k];
    }

private:
    const MeasureBlock* require_block(std::size_t k) const {
        const MeasureBlock* b = block_at(k);
        if (!b) throw std::out_of_range("block index beyond finite stream");
        return b;
    }

    MeasureBlockStreamFn blocks_;
    std::string name_;
    StructureTag tag_;
    mutable std::mutex mu_;
    mutable std::vector<MeasureBlock> cache_;
    mutable std::optional<std::size_t> finite_count_;
};

class AsymptoticDensitySub final : public SubmeasureImpl, public BlockwiseView {
public:
    Rat eval(const FinSet& f) const override {
        // sup over n of |F /\ [2^n, 2^{n+1})| / 2^n, computed in one pass.
        Rat best = 0;
        std::size_t i = 0;
        for (unsigned n = 0; i < f.size(); ++n) {
            Nat lo = Nat{1} << n;
            Nat hi = Nat{2} << n;
            while (i < f.size() && f[i] < lo) ++i;  // skips 0, which lies below every block
            Nat count = 0;
            while (i < f.size() && f[i] < hi) {
                ++count;
                ++i;
            }
            if (count > 0) {
                Rat v = Rat(count) * pow2_inv(n);
                if (v > best) best = v;
            }
        }
        return best;
    }
    StructureTag tag() const override { return StructureTag::AsymptoticDensity; }
    const BlockwiseView* blockwise() const override { return this; }
    std::optional<Rat> global_bound() const override { return Rat(1); }
    std::string describe() const override { return "asymptotic-density"; }

    std::optional<std::size_t> block_count() const override { return std::nullopt; }
    Nat block_lo(std::size_t k) const override { return Nat{1} << k; }
    Nat block_hi(std::size_t k) const override { return Nat{2} << k; }
    Rat block_value(std::size_t k, const OmegaSet& a) const override {
        Nat count = 0;
        for (Nat x = block_lo(k); x < block_hi(k); ++x) {
            if (a.contains(x)) ++count;
        }
        return Rat(count) * pow2_inv(static_cast<unsigned>(k));
    }
};

// ---- Erdos-Ulam ratio ------------------------------------------------------

class ErdosUlamSub final : public SubmeasureImpl {
public:
    explicit ErdosUlamSub(WeightFn f) : f_(std::move(f)) {}

    Rat eval(const FinSet& f) const override {
        // sup over horizons h of num_F(h)/den(h). The sup is attained at
        // h = x+1 for some x in F: between elements the numerator is constant
        // while the denominator grows. The running sums and the best ratio are
        // kept as unnormalized integer pairs; one normalization at the end.
        if (f.empty()) return Rat(0);
        ensure_prefix_sums(f.back() + 1);
        std::lock_guard<std::mutex> lock(mu_);
        BigInt num_p = 0, num_q = 1;
        BigInt best_p = 0, best_q = 1;
        for (Nat x : f) {
            Rat w = weight_at(x);
            num_p = num_p * rat_den(w) + rat_num(w) * num_q;
            num_q *= rat_den(w);
            const Rat& s = psum_[static_cast<std::size_t>(x) + 1];
            BigInt cand_p = num_p * rat_den(s);
            BigInt cand_q = num_q * rat_num(s);
            if (cand_p * best_q > best_p * cand_q) {
                best_p = std::move(cand_p);
                best_q = std::move(cand_q);
            }
        }
        return Rat(best_p, best_q);
    }
    StructureTag tag() const override { return StructureTag::ErdosUlam; }
    std::optional<Rat> global_bound() const override { return Rat(1); }
    std::string describe() const override { return "erdos-ulam(" + f_.name + ")"; }

    /// Exact prefix sum S(h) = sum of f over [0,h).
    Rat prefix_weight(Nat h) const {
        ensure_prefix_sums(h);
        std::lock_guard<std::mutex> lock(mu_);
        return psum_[static_cast<std::size_t>(h)];
    }

private:
    Rat weight_at(Nat n) const {
        Rat w = f_.at(n);
        if (w <= 0) throw std::invalid_argument("Erdos-Ulam weight must be positive");
        return w;
    }

    void ensure_prefix_sums(Nat h) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (psum_.empty()) psum_.push_back(Rat(0));
        while (psum_.size() <= h) {
            Nat n = psum_.size() - 1;
            psum_.push_back(psum_.back() + weight_at(n));
        }
    }

    WeightFn f_;
    mutable std::mutex mu_;
    mutable std::vector<Rat> psum_;
};

// ---- trace of the null ideal -------------------------------------------

class TraceNullSub final : public SubmeasureImpl {
public:
    Rat eval(const FinSet& f) const override {
        std::vector<std::string> strings;
        strings.reserve(f.size());
        for (Nat n : f) strings.push_back(nat_to_binary_string(n));
        return cylinder_measure(strings);
    }
    StructureTag tag() const override { return StructureTag::TraceNull; }
    std::optional<Rat> global_bound() const override { return Rat(1); }
    std::string describe() const override { return "trace-null"; }
};

// ---- generalized density ---------------------------------------------------

class GeneralizedDensitySub final : public SubmeasureImpl, public BlockwiseView {
public:
    GeneralizedDensitySub(std::vector<GeneralizedDensityComponent> comps, std::string name)
        : comps_(std::move(comps)), name_(std::move(name)) {
        for (std::size_t i = 1; i < comps_.size(); ++i) {
            if (comps_[i].domain_lo < comps_[i - 1].domain_hi)
                throw std::invalid_argument("generalized-density domains out of order");
        }
    }

    Rat eval(const FinSet& f) const override {
        Rat best = 0;
        for (const auto& c : comps_) {
            FinSet piece;
            for (Nat x : f) {
                if (x >= c.domain_lo && x < c.domain_hi) piece.push_back(x);
            }
            if (piece.empty()) continue;
            Rat v = c.eval(piece);
            if (v > best) best = v;
        }
        return best;
    }
    StructureTag tag() const override { return StructureTag::GeneralizedDensity; }
    const BlockwiseView* blockwise() const override { return this; }
    std::string describe() const override { return name_; }

    std::optional<std::size_t> block_count() const override { return comps_.size(); }
    Nat block_lo(std::size_t k) const override { return comps_.at(k).domain_lo; }
    Nat block_hi(std::size_t k) const override { return comps_.at(k).domain_hi; }
    Rat block_value(std::size_t k, const OmegaSet& a) const override {
        const auto& c = comps_.at(k);
        FinSet piece;
        for (Nat x = c.domain_lo; x < c.domain_hi; ++x) {
            if (a.contains(x)) piece.push_back(x);
        }
        if (piece.empty()) return Rat(0);
        return c.eval(piece);
    }

private:
    std::vector<GeneralizedDensityComponent> comps_;
    std::string name_;
};

// ---- explicit table -------------------------------------------------------

class TableSub final : public SubmeasureImpl {
public:
    TableSub(FinSet domain, std::function<Rat(const FinSet&)> table, std::string name)
        : domain_(std::move(domain)), table_(std::move(table)), name_(std::move(name)) {}

    Rat eval(const FinSet& f) const override { return table_(fs_intersect(f, domain_)); }
    StructureTag tag() const override { return StructureTag::Generic; }
    std::string describe() const override { return name_; }

private:
    FinSet domain_;
    std::function<Rat(const FinSet&)> table_;
    std::string name_;
};

} // namespace

Submeasure make_summable(WeightFn f) {
    return Submeasure(std::make_shared<SummableSub>(std::move(f)));
}

Submeasure make_counting() { return make_summable(weight_by_name("one")); }

Submeasure make_density(MeasureBlockStreamFn blocks, std::string name) {
    return Submeasure(std::make_shared<DensitySub>(std::move(blocks), std::move(name),
                                                   StructureTag::Density));
}

Submeasure make_density(std::vector<MeasureBlock> blocks, std::string name) {
    auto list = std::make_shared<std::vector<MeasureBlock>>(std::move(blocks));
    return make_density(
        [list](std::size_t k) -> std::optional<MeasureBlock> {
            if (k >= list->size()) return std::nullopt;
            return (*list)[k];
        },
        std::move(name));
}

Submeasure make_asymptotic_density() {
    return Submeasure(std::make_shared<AsymptoticDensitySub>());
}

Submeasure make_erdos_ulam(WeightFn f) {
    return Submeasure(std::make_shared<ErdosUlamSub>(std::move(f)));
}

Submeasure make_trace_null() { return Submeasure(std::make_shared<TraceNullSub>()); }

ErdosUlamFunctionReport check_erdos_ulam_function(
    const WeightFn& f, const std::vector<Nat>& ratio_horizons,
    const std::vector<std::pair<Nat, Rat>>& divergence_schedule) {
    ErdosUlamFunctionReport rep;
    Nat top = 0;
    for (Nat n : ratio_horizons) top = std::max(top, n + 2);
    for (const auto& [h, bound] : divergence_schedule) {
        (void)bound;
        top = std::max(top, h + 1);
    }
    std::vector<Rat> psum{Rat(0)};
    for (Nat n = 0; n + 1 < top + 1; ++n) {
        Rat w = f.at(n);
        if (w <= 0 && rep.weights_positive) {
            rep.weights_positive = false;
            rep.first_bad_weight = n;
        }
        psum.push_back(psum.back() + w);
    }
    for (Nat n : ratio_horizons)
        rep.ratios.emplace_back(n, f.at(n) / psum[static_cast<std::size_t>(n) + 1]);
    for (const auto& [h, bound] : divergence_schedule) {
        Rat s = psum[static_cast<std::size_t>(h)];
        rep.partial_sums.emplace_back(h, s);
        if (s < bound) rep.divergence_ok = false;
    }
    return rep;
}

Submeasure make_generalized_density(std::vector<GeneralizedDensityComponent> components,
                                    std::string name) {
    return Submeasure(
        std::make_shared<GeneralizedDensitySub>(std::move(components), std::move(name)));
}

Submeasure make_table(FinSet domain, std::function<Rat(const FinSet&)> table, std::string name) {
    return Submeasure(
        std::make_shared<TableSub>(fs_normalize(std::move(domain)), std::move(table), std::move(name)));
}

// ---- trace-null helpers -----------------------------------------------------

std::string nat_to_binary_string(Nat n) {
    // n+1 written in binary is 1s; the string is s.
    Nat v = n + 1;
    std::string rev;
    while (v > 1) {
        rev.push_back(static_cast<char>('0' + (v & 1)));
        v >>= 1;
    }
    return std::string(rev.rbegin(), rev.rend());
}

Nat binary_string_to_nat(const std::string& s) {
    Nat v = 1;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("binary string expected");
        v = (v << 1) | static_cast<Nat>(c - '0');
    }
    return v - 1;
}

Rat cylinder_measure(const std::vector<std::string>& strings) {
    // Keep only prefix-minimal strings; cylinders of the kept antichain are
    // pairwise disjoint, so the measure is the sum of 2^-length.
    std::vector<std::string> sorted = strings;
    std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> kept;
    Rat total = 0;
    for (const auto& s : sorted) {
        bool covered = false;
        for (const auto& p : kept) {
            if (s.size() >= p.size() && s.compare(0, p.size(), p) == 0) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            kept.push_back(s);
            total += pow2_inv(static_cast<unsigned>(s.size()));
        }
    }
    return total;
}

// ---- operations -------------------------------------------------------------

Rat eval_prefix(const Submeasure& phi, const OmegaSet& a, Nat n) {
    return phi.eval(a.prefix(n));
}

Rat core_estimate(const Submeasure& phi, const OmegaSet& a, Nat m, Nat n) {
    if (m > n) throw std::invalid_argument("core_estimate requires m <= n");
    FinSet pts = a.prefix(n);
    FinSet tail;
    for (Nat x : pts) {
        if (x >= m) tail.push_back(x);
    }
    return phi.eval(tail);
}

std::string cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::ExhYes: return "ExhYes";
        case CertKind::ExhNo: return "ExhNo";
        case CertKind::FinYes: return "FinYes";
        case CertKind::ZeroYes: return "ZeroYes";
        case CertKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool MembershipCertificate::replay(const Submeasure& phi, const OmegaSet& a) const {
    const BlockwiseView* bw = phi.blockwise();
    for (const auto& s : samples) {
        if (s.note == "block") {
            if (!bw) return false;
            if (bw->block_value(static_cast<std::size_t>(s.n), a) != s.value) return false;
        } else if (s.note == "prefix") {
            if (eval_prefix(phi, a, s.n) != s.value) return false;
        } else {
            if (core_estimate(phi, a, s.m, s.n) != s.value) return false;
        }
    }
    return true;
}

std::vector<SchedulePair> default_schedule(Nat horizon) {
    std::vector<SchedulePair> sched;
    Nat m = 0;
    while (true) {
        sched.push_back({m, horizon});
        if (m == 0) m = 1;
        else if (m * 2 > horizon / 2) break;
        else m *= 2;
    }
    return sched;
}

namespace {

// Finds a block lying fully inside [m, limit) whose exact value on A is at
// least epsilon. Returns the block index on success.
std::optional<std::pair<std::size_t, Rat>> tail_block_witness(const BlockwiseView& bw,
                                                              const OmegaSet& a, Nat m, Nat limit,
                                                              const Rat& epsilon) {
    auto count = bw.block_count();
    for (std::size_t k = 0;; ++k) {
        if (count && k >= *count) break;
        Nat lo = bw.block_lo(k);
        if (lo >= limit) break;
        if (lo < m) continue;
        if (bw.block_hi(k) > limit) break;
        Rat v = bw.block_value(k, a);
        if (v >= epsilon) return std::make_pair(k, v);
    }
    return std::nullopt;
}

} // namespace

MembershipCertificate exh_certificate(const Submeasure& phi, const OmegaSet& a, const Rat& epsilon,
                                      const std::vector<SchedulePair>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("empty schedule");
    for (const auto& p : schedule) {
        if (p.m > p.n) throw std::invalid_argument("schedule pair with m > n");
    }

    MembershipCertificate cert;
    cert.epsilon = epsilon;

    // Group the schedule by m, preserving first-appearance order.
    std::vector<Nat> ms;
    std::map<Nat, std::vector<Nat>> horizons;
    for (const auto& p : schedule) {
        if (!horizons.count(p.m)) ms.push_back(p.m);
        horizons[p.m].push_back(p.n);
    }

    for (Nat m : ms) {
        bool all_small = true;
        std::vector<CertSample> samples;
        for (Nat n : horizons[m]) {
            Rat v = core_estimate(phi, a, m, n);
            samples.push_back({m, n, v, "core"});
            if (v >= epsilon) {
                all_small = false;
                break;
            }
        }
        if (all_small) {
            cert.kind = CertKind::ExhYes;
            cert.witness_m = m;
            cert.samples = std::move(samples);
            return cert;
        }
    }

    // Negative evidence requires block structure: a full block beyond each
    // tested m with exact value >= epsilon.
    if (const BlockwiseView* bw = phi.blockwise()) {
        Nat limit = 0;
        for (const auto& p : schedule) limit = std::max(limit, p.n);
        std::vector<CertSample> witnesses;
        bool every_m = true;
        for (Nat m : ms) {
            auto w = tail_block_witness(*bw, a, m, limit, epsilon);
            if (!w) {
                every_m = false;
                break;
            }
            witnesses.push_back({m, static_cast<Nat>(w->first), w->second, "block"});
        }
        if (every_m) {
            cert.kind = CertKind::ExhNo;
            cert.samples = std::move(witnesses);
            return cert;
        }
    }

    cert.kind = CertKind::Unknown;
    cert.note = "no scheduled m stayed below epsilon and no exact block lower bound persisted";
    return cert;
}

MembershipCertificate zero_certificate(const Submeasure& phi, const OmegaSet& a, Nat horizon) {
    MembershipCertificate cert;
    cert.epsilon = 0;
    const BlockwiseView* bw = phi.blockwise();
    if (bw) {
        auto count = bw->block_count();
        if (count) {
            bool all_within = *count == 0 || bw->block_hi(*count - 1) <= horizon;
            if (all_within) {
                bool all_zero = true;
                for (std::size_t k = 0; k < *count; ++k) {
                    Rat v = bw->block_value(k, a);
                    cert.samples.push_back({0, static_cast<Nat>(k), v, "block"});
                    if (v != 0) {
                        all_zero = false;
                        break;
                    }
                }
                if (all_zero) {
                    cert.kind = CertKind::ZeroYes;
                    cert.note = "finite block stream fully inspected";
                    return cert;
                }
                cert.kind = CertKind::Unknown;
                cert.note = "nonzero block value observed";
                return cert;
            }
        }
    }
    Rat v = eval_prefix(phi, a, horizon);
    cert.samples.push_back({0, horizon, v, "prefix"});
    cert.kind = CertKind::Unknown;
    cert.note = v == 0 ? "all tested prefixes evaluate to zero (evidence only)"
                       : "nonzero prefix value observed";
    return cert;
}

MembershipCertificate fin_certificate(const Submeasure& phi, const OmegaSet& a, Nat horizon) {
    MembershipCertificate cert;
    if (a.kind() == OmegaSet::Kind::Finite) {
        const FinSet& f = a.finite_elements();
        Rat v = phi.eval(f);
        Nat h = f.empty() ? 0 : f.back() + 1;
        cert.kind = CertKind::FinYes;
        cert.samples.push_back({0, h, v, "prefix"});
        cert.note = "finite set evaluates exactly";
        return cert;
    }
    if (auto bound = phi.global_bound()) {
        cert.kind = CertKind::FinYes;
        cert.epsilon = *bound;
        cert.note = "family is globally bounded";
        return cert;
    }
    Rat v = eval_prefix(phi, a, horizon);
    cert.samples.push_back({0, horizon, v, "prefix"});
    cert.kind = CertKind::Unknown;
    cert.note = "prefix value recorded; finiteness not decidable from finite data";
    return cert;
}

UnboundedWitness unbounded_witness(const Submeasure& phi, const OmegaSet& inside, const Rat& target,
                                   Nat budget) {
    if (target < 0) throw std::invalid_argument("target must be non-negative");
    UnboundedWitness w;
    w.achieved = 0;
    if (target == 0) {
        w.success = true;
        return w;
    }
    FinSet best_prefix;
    for (Nat h = 1;; h = h * 2) {
        if (h > budget) h = budget;
        FinSet pts = inside.prefix(h);
        Rat v = phi.eval(pts);
        w.horizon_used = h;
        if (v > w.achieved) {
            w.achieved = v;
            best_prefix = pts;
        }
        if (v >= target) break;
        if (h == budget) return w;  // failure: budget exhausted, best value reported
    }
    // Trim to the least prefix reaching the target (values are monotone in the
    // prefix length).
    std::size_t lo = 1, hi = best_prefix.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        FinSet head(best_prefix.begin(), best_prefix.begin() + static_cast<std::ptrdiff_t>(mid));
        if (phi.eval(head) >= target) hi = mid;
        else lo = mid + 1;
    }
    w.set.assign(best_prefix.begin(), best_prefix.begin() + static_cast<std::ptrdiff_t>(lo));
    w.achieved = phi.eval(w.set);
    w.success = true;
    return w;
}

MeasureBlockStreamFn preset_block_stream(const std::string& name) {
    auto uniform = [](std::size_t n, Rat mass) {
        Nat size = Nat{1} << n;
        Nat start = size - 1;
        MeasureBlock b;
        Rat w = mass * pow2_inv(static_cast<unsigned>(n));
        for (Nat i = 0; i < size; ++i) {
            b.support.push_back(start + i);
            b.weights.push_back(w);
        }
        return b;
    };
    // Streams end at 18 blocks: the next ground would hold 2^18 points, well
    // past any budget used here, and materialization must stay affordable.
    constexpr std::size_t kMaxBlocks = 18;
    if (name == "mass_k") {
        return [uniform](std::size_t n) -> std::optional<MeasureBlock> {
            if (n >= kMaxBlocks) return std::nullopt;
            return uniform(n, Rat(BigInt(n)));
        };
    }
    if (name == "mass_n2n_plus_1") {
        return [uniform](std::size_t n) -> std::optional<MeasureBlock> {
            if (n >= kMaxBlocks) return std::nullopt;
            return uniform(n, Rat(BigInt(n)) * pow2(static_cast<unsigned>(n)) + 1);
        };
    }
    if (name == "mass_nsq2n_plus_1") {
        return [uniform](std::size_t n) -> std::optional<MeasureBlock> {
            if (n >= kMaxBlocks) return std::nullopt;
            return uniform(n, Rat(BigInt(n) * BigInt(n)) * pow2(static_cast<unsigned>(n)) + 1);
        };
    }
    if (name == "bounded_unit") {
        return [uniform](std::size_t n) -> std::optional<MeasureBlock> {
            if (n >= kMaxBlocks) return std::nullopt;
            return uniform(n, Rat(1));
        };
    }
    throw std::invalid_argument("unknown block preset: " + name);
}

WeightFn weight_by_name(const std::string& name) {
    if (name == "reciprocal") return {name, [](Nat n) { return Rat(1, BigInt(n) + 1); }};
    if (name == "one") return {name, [](Nat) { return Rat(1); }};
    if (name == "geometric") return {name, [](Nat n) { return pow2_inv(static_cast<unsigned>(n) + 1); }};
    if (name == "pow2") return {name, [](Nat n) { return pow2_inv(static_cast<unsigned>(n)); }};
    if (name == "linear") return {name, [](Nat n) { return Rat(BigInt(n)); }};
    throw std::invalid_argument("unknown weight stream: " + name);
}

} // namespace idealab
