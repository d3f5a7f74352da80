#include "idealab/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace idealab {

Rat SummableExtensionResult::f_at(Nat n) const {
    auto it = std::lower_bound(weight_table.begin(), weight_table.end(), n,
                               [](const std::pair<Nat, Rat>& e, Nat x) { return e.first < x; });
    if (it != weight_table.end() && it->first == n) return it->second;
    return Rat(0);
}

Rat SummableExtensionResult::rho_eval(const FinSet& f, const std::vector<MeasureBlock>& blocks) const {
    Rat total = 0;
    for (std::size_t k = 1; k <= selected.size(); ++k) {
        const MeasureBlock& b = blocks.at(selected[k - 1]);
        total += pow2_inv(static_cast<unsigned>(k)) * b.value_on(f);
    }
    return total;
}

std::vector<MeasureBlock> materialize_blocks(const MeasureBlockStreamFn& blocks, std::size_t count) {
    std::vector<MeasureBlock> out;
    for (std::size_t k = 0; k < count; ++k) {
        auto b = blocks(k);
        if (!b) break;
        out.push_back(std::move(*b));
    }
    return out;
}

SummableExtensionResult summable_extension(const MeasureBlockStreamFn& blocks, std::size_t depth,
                                           std::size_t index_budget) {
    SummableExtensionResult res;
    std::vector<MeasureBlock> mat;
    auto fetch = [&](std::size_t idx) -> const MeasureBlock* {
        while (mat.size() <= idx) {
            auto b = blocks(mat.size());
            if (!b) return nullptr;
            mat.push_back(std::move(*b));
        }
        return &mat[idx];
    };

    std::size_t next = 0;
    for (std::size_t k = 1; k <= depth; ++k) {
        Rat threshold = Rat(BigInt(k)) * pow2(static_cast<unsigned>(k));
        bool found = false;
        for (std::size_t n = next; n <= index_budget; ++n) {
            const MeasureBlock* b = fetch(n);
            if (!b) break;
            Rat mass = b->mass();
            if (mass > threshold) {
                res.selected.push_back(n);
                res.masses.push_back(mass);
                res.thresholds.push_back(threshold);
                Rat coeff = pow2_inv(static_cast<unsigned>(k));
                Rat block_sum = 0;
                for (std::size_t i = 0; i < b->support.size(); ++i) {
                    Rat w = coeff * b->weights[i];
                    res.weight_table.emplace_back(b->support[i], w);
                    block_sum += w;
                }
                res.per_block_sums.push_back(block_sum);
                next = n + 1;
                found = true;
                break;
            }
        }
        if (!found) {
            res.diagnostic = "no block mass exceeds " + rat_str(threshold) + " at step " +
                             std::to_string(k) + " within the index budget";
            return res;
        }
    }
    std::sort(res.weight_table.begin(), res.weight_table.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.success = true;
    return res;
}

FinToExhResult fin_to_exh(const Submeasure& phi, std::size_t depth, Nat budget) {
    FinToExhResult res;
    std::vector<Nat> cuts{0};

    auto interval_value = [&](Nat lo, Nat hi) {
        FinSet pts;
        pts.reserve(static_cast<std::size_t>(hi - lo));
        for (Nat x = lo; x < hi; ++x) pts.push_back(x);
        return phi.eval(pts);
    };

    for (std::size_t n = 0; n < depth; ++n) {
        Nat lo = cuts.back();
        Rat need = Rat(BigInt(n) * BigInt(n));
        // Minimal strictly larger cut reaching the value; the n = 0 threshold
        // is vacuous, so the strict-increase rule gives lo + 1.
        Nat hi = lo + 1;
        if (interval_value(lo, hi) < need) {
            // Grow by doubling, then shrink to the least sufficient cut.
            Nat step = 1;
            bool reached = false;
            while (hi < budget) {
                step *= 2;
                hi = std::min<Nat>(lo + step, budget);
                if (interval_value(lo, hi) >= need) {
                    reached = true;
                    break;
                }
            }
            if (!reached) {
                res.diagnostic = "budget exhausted before the interval value reached " +
                                 rat_str(need) + " at step " + std::to_string(n);
                return res;
            }
            Nat a = lo + 1, b = hi;
            while (a < b) {
                Nat mid = a + (b - a) / 2;
                if (interval_value(lo, mid) >= need) b = mid;
                else a = mid + 1;
            }
            hi = a;
        }
        res.interval_values.push_back(interval_value(lo, hi));
        cuts.push_back(hi);
    }

    std::vector<GeneralizedDensityComponent> comps;
    for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
        GeneralizedDensityComponent c;
        c.domain_lo = cuts[n];
        c.domain_hi = cuts[n + 1];
        if (n == 0) {
            c.eval = [](const FinSet&) { return Rat(0); };
        } else {
            Rat scale(1, BigInt(n));
            Submeasure inner = phi;
            c.eval = [inner, scale](const FinSet& piece) { return inner.eval(piece) * scale; };
        }
        comps.push_back(std::move(c));
    }
    res.cuts = std::move(cuts);
    res.psi = make_generalized_density(std::move(comps), "rescaled(" + phi.describe() + ")");
    res.success = true;
    return res;
}

std::optional<Nat> FinToExhResult::cut_for_bound(const Rat& bound, const Rat& epsilon) const {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    Rat q = bound / epsilon;
    BigInt floor_q = rat_num(q) / rat_den(q);  // non-negative inputs
    BigInt n0 = floor_q + 1;
    if (n0 >= BigInt(static_cast<unsigned long>(cuts.size())))
        return std::nullopt;  // the construction is too shallow for this bound
    return cuts[static_cast<std::size_t>(static_cast<unsigned long>(n0))];
}

PartitionSelectionResult partition_unbounded_selection(const Submeasure& phi,
                                                       const PartitionScheme& scheme,
                                                       std::size_t depth, Nat budget) {
    PartitionSelectionResult res;
    FinSet used;

    for (std::size_t level = 0; level < depth; ++level) {
        FinitePartition part = scheme.level(level);

        // Candidate cells refine the chain built so far.
        std::vector<std::size_t> candidates;
        for (std::size_t c = 0; c < part.cell_count; ++c) {
            if (level == 0 || scheme.parent_cell(level, c) == res.chain.cells[level - 1])
                candidates.push_back(c);
        }
        if (candidates.empty()) {
            res.diagnostic = "no child cell at level " + std::to_string(level);
            res.failed_level = level;
            return res;
        }

        // Probe the raw prefix value of each candidate over the budget window;
        // ties go to the smaller cell index.
        std::size_t best_cell = candidates[0];
        Rat best_value(-1);
        for (std::size_t c : candidates) {
            FinSet pts;
            for (Nat x = 0; x < budget; ++x) {
                if (part.label(x) == c) pts.push_back(x);
            }
            Rat v = phi.eval(pts);
            if (v > best_value) {
                best_value = v;
                best_cell = c;
            }
        }
        res.chain.cells.push_back(best_cell);
        res.probe_values.push_back(best_value);

        // Greedily take fresh cell points until the value threshold n+1.
        Rat need = Rat(BigInt(level) + 1);
        FinSet f;
        Rat value = 0;
        for (Nat x = 0; x < budget && value < need; ++x) {
            if (part.label(x) != best_cell || fs_contains(used, x)) continue;
            f.push_back(x);
            value = phi.eval(f);
        }
        if (value < need) {
            res.diagnostic = "cell value did not reach " + rat_str(need) + " at level " +
                             std::to_string(level) + " within the budget";
            res.failed_level = level;
            return res;
        }
        used = fs_union(used, f);
        res.values.push_back(value);
        res.sets.push_back(std::move(f));
    }
    res.success = true;
    return res;
}

SignSelectionResult sign_scheme_selection(const Submeasure& phi, const std::vector<OmegaSet>& sets,
                                          std::size_t depth, Nat budget) {
    if (sets.size() < depth) throw std::invalid_argument("need one set per level");
    SignSelectionResult res;
    OmegaSet running = OmegaSet::all();
    FinSet used;

    for (std::size_t n = 0; n < depth; ++n) {
        OmegaSet plus = omega_intersect(running, sets[n]);
        OmegaSet minus = omega_intersect(running, sets[n].complement());
        Rat grow_plus = phi.eval(plus.prefix(budget));
        Rat grow_minus = phi.eval(minus.prefix(budget));
        res.probe_values.emplace_back(grow_plus, grow_minus);

        int sign = grow_plus >= grow_minus ? 1 : -1;
        res.signs.push_back(sign);
        running = sign > 0 ? plus : minus;

        Rat need = Rat(BigInt(n));
        FinSet f;
        Rat value = 0;
        for (Nat x = 0; x < budget && value < need; ++x) {
            if (!running.contains(x) || fs_contains(used, x)) continue;
            f.push_back(x);
            value = phi.eval(f);
        }
        if (value < need) {
            res.diagnostic = "running intersection value did not reach " + rat_str(need) +
                             " at level " + std::to_string(n) + " within the budget";
            res.failed_level = n;
            return res;
        }
        used = fs_union(used, f);
        res.values.push_back(value);
        res.sets.push_back(std::move(f));
    }
    res.success = true;
    return res;
}

SnppDecomposition snpp_decomposition(const OmegaSet& e, const std::vector<OmegaSet>& chain,
                                     Nat horizon) {
    if (chain.empty()) throw std::invalid_argument("chain must be nonempty");
    SnppDecomposition out;

    FinSet e_pts = e.prefix(horizon);
    std::vector<FinSet> chain_pts;
    chain_pts.reserve(chain.size());
    for (const auto& a : chain) chain_pts.push_back(a.prefix(horizon));

    FinSet core = chain_pts[0];
    for (std::size_t i = 1; i < chain_pts.size(); ++i) core = fs_intersect(core, chain_pts[i]);
    out.core = core;

    const std::size_t l = chain.size();
    std::size_t piece_count = std::max(l - 1, core.size());
    if (piece_count == 0) piece_count = 1;
    out.pieces.assign(piece_count, {});

    for (std::size_t m = 0; m + 1 < l; ++m) {
        FinSet diff = fs_minus(chain_pts[m], chain_pts[m + 1]);
        out.pieces[m] = fs_union(out.pieces[m], fs_intersect(diff, e_pts));
    }
    // Points of the horizon window outside the chain head fold into the first
    // piece: the head plays the role of the whole space.
    {
        FinSet all;
        all.reserve(horizon);
        for (Nat x = 0; x < horizon; ++x) all.push_back(x);
        FinSet outside = fs_minus(all, chain_pts[0]);
        out.pieces[0] = fs_union(out.pieces[0], fs_intersect(outside, e_pts));
    }
    for (std::size_t m = 0; m < core.size(); ++m) {
        if (fs_contains(e_pts, core[m]))
            out.pieces[m] = fs_union(out.pieces[m], FinSet{core[m]});
    }

    // Replay the partition identity on the window.
    FinSet rebuilt;
    bool disjoint = true;
    for (const auto& p : out.pieces) {
        if (!fs_disjoint(rebuilt, p)) disjoint = false;
        rebuilt = fs_union(rebuilt, p);
    }
    out.partition_ok = disjoint && rebuilt == e_pts;
    return out;
}

} // namespace idealab
