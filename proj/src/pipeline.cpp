#include "idealab/pipeline.hpp"

#include <stdexcept>

namespace idealab {

ScheduleFn default_schedule_N() {
    return [](std::size_t k) { return Rat(BigInt(k) + 1); };
}

ScheduleFn default_schedule_M() {
    return [](std::size_t k) { return Rat(BigInt(k) + 2); };
}

Stage1Result disjointify_stage1(const MeasureSeqFn& seq, std::size_t count,
                                const ScheduleFn& n_schedule, const ScheduleFn& m_schedule,
                                std::size_t index_budget) {
    if (m_schedule(0) <= 1) throw std::invalid_argument("schedule requires M_0 > 1");

    Stage1Result res;
    FinSet excluded;  // complement of the current neighborhood A_k of p
    std::size_t next_index = 0;

    for (std::size_t k = 0; k < count; ++k) {
        Rat nk = n_schedule(k);
        Rat mk = m_schedule(k);
        if (nk <= 0 || mk <= 0) throw std::invalid_argument("schedules must be positive");

        bool found = false;
        for (std::size_t n = next_index; n <= index_budget && !found; ++n) {
            FinMeasure mu = seq(n);

            // Norm of mu on the excluded finite part (always p-free).
            Rat restricted = 0;
            for (const auto& [atom, w] : mu.weights()) {
                if (!atom.is_p && fs_contains(excluded, atom.n)) restricted += rat_abs(w);
            }
            Rat threshold = nk * mk * mk * (restricted + 1);

            // The best |mu-hat(U)| over clopens U inside A_k off p is the
            // larger of the positive and negative off-p parts of mu there.
            Rat pos = 0, neg = 0;
            FinSet pos_pts, neg_pts;
            for (const auto& [atom, w] : mu.weights()) {
                if (atom.is_p || fs_contains(excluded, atom.n)) continue;
                if (w > 0) {
                    pos += w;
                    pos_pts.push_back(atom.n);
                } else {
                    neg += -w;
                    neg_pts.push_back(atom.n);
                }
            }
            Rat attained = pos >= neg ? pos : neg;
            FinSet u_set = pos >= neg ? pos_pts : neg_pts;
            if (!(attained > threshold)) continue;

            Stage1Item item;
            item.k = k;
            item.selected_index = n;
            item.restricted_norm = restricted;
            item.threshold = threshold;
            item.attained = attained;
            item.u_set = std::move(u_set);
            item.m_value = mk;

            Rat denom = mk * restricted + mk;
            item.theta = mu.scaled(Rat(1) / denom);

            // The small-neighborhood step is exact for finite supports: the
            // next A excludes every off-p support point of the selection, so
            // B_k is that support minus what previous steps consumed.
            FinSet off_p = mu.omega_support();
            item.b_set = fs_minus(off_p, excluded);

            FinMeasure nu;
            for (const auto& [atom, w] : item.theta.weights()) {
                if (atom.is_p || fs_contains(item.b_set, atom.n)) nu.set(atom, w);
            }
            item.nu = std::move(nu);

            Rat off_norm = 0;
            for (const auto& [atom, w] : item.nu.weights()) {
                if (!atom.is_p) off_norm += rat_abs(w);
            }
            item.off_p_norm = off_norm;

            excluded = fs_union(excluded, off_p);
            next_index = n + 1;
            res.items.push_back(std::move(item));
            found = true;
        }
        if (!found) {
            res.diagnostic =
                "no clopen beats the threshold at step " + std::to_string(k) +
                " within the index budget; the concentration point is not strong at this scale";
            res.failed_k = k;
            return res;
        }
    }
    res.success = true;
    res.excluded_final = std::move(excluded);
    return res;
}

bool stage1_pointwise_bound_ok(const Stage1Item& item, const ClopenCode& a) {
    Rat lhs = rat_abs(measure_eval(item.nu, a));
    Rat rhs = rat_abs(measure_eval(item.theta, a)) + Rat(1) / item.m_value +
              Rat(1, BigInt(item.k) + 1);
    return lhs < rhs;
}

Stage2Result disjointify_stage2(const std::vector<FinMeasure>& rho,
                                const std::vector<Rat>& norm_floor, CaseRule rule,
                                const Rat& atom_threshold) {
    if (norm_floor.size() < rho.size())
        throw std::invalid_argument("norm floor schedule shorter than the input window");

    Stage2Result res;

    std::vector<Rat> atoms;
    atoms.reserve(rho.size());
    for (const auto& r : rho) atoms.push_back(r.p_weight());

    auto strictly_increasing_abs = [&]() {
        if (rho.empty()) return false;
        if (rat_abs(atoms[0]) == 0) return false;
        for (std::size_t i = 1; i < atoms.size(); ++i) {
            if (!(rat_abs(atoms[i]) > rat_abs(atoms[i - 1]))) return false;
        }
        return rat_abs(atoms.back()) > atom_threshold;
    };

    int case_used;
    switch (rule) {
        case CaseRule::ForceConvergent: case_used = 1; break;
        case CaseRule::ForceRatio: case_used = 2; break;
        case CaseRule::Auto: default: case_used = strictly_increasing_abs() ? 2 : 1; break;
    }
    res.case_used = case_used;

    std::vector<std::size_t> picked;
    if (case_used == 2) {
        // Greedy subsequence with strictly increasing nonzero |p-atoms|.
        Rat last = 0;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            Rat a = rat_abs(atoms[i]);
            if (a > last && a > 0) {
                picked.push_back(i);
                last = a;
            }
        }
        if (picked.size() < 2) {
            res.diagnostic = "no increasing p-atom subsequence of length 2 in the window";
            return res;
        }
    } else {
        for (std::size_t i = 0; i < rho.size(); ++i) picked.push_back(i);
        if (picked.size() < 2) {
            res.diagnostic = "window too short to pair";
            return res;
        }
    }

    auto drop_p = [](const FinMeasure& m) {
        FinMeasure out;
        for (const auto& [atom, w] : m.weights()) {
            if (!atom.is_p) out.set(atom, w);
        }
        return out;
    };

    for (std::size_t k = 0; 2 * k + 1 < picked.size(); ++k) {
        std::size_t i = picked[2 * k];
        std::size_t j = picked[2 * k + 1];
        Stage2Item item;
        item.k = k;
        item.first = i;
        item.second = j;
        if (case_used == 2) {
            item.alpha = atoms[i] / atoms[j];
            item.nu = drop_p(rho[i] - rho[j].scaled(item.alpha));
        } else {
            item.alpha = 1;
            item.nu = drop_p(rho[i] - rho[j]);
        }
        item.norm = item.nu.norm();
        if (!(item.norm > norm_floor[i])) {
            res.diagnostic = "pair " + std::to_string(k) + " failed the norm floor";
            return res;
        }
        res.items.push_back(std::move(item));
    }
    res.success = true;
    return res;
}

std::vector<NormalizeItem> anti_grothendieck_normalize(const std::vector<FinMeasure>& seq) {
    // Supports must be pairwise disjoint, p-free, and nonzero.
    FinSet seen;
    for (const auto& m : seq) {
        if (m.is_zero()) throw std::invalid_argument("zero measure in the input");
        if (m.has_p()) throw std::invalid_argument("inputs must be p-free");
        FinSet supp = m.omega_support();
        if (!fs_disjoint(seen, supp)) throw std::invalid_argument("supports are not disjoint");
        seen = fs_union(seen, supp);
    }

    std::vector<NormalizeItem> out;
    out.reserve(seq.size());
    for (const auto& m : seq) {
        Rat norm = m.norm();
        NormalizeItem item;
        item.normalized = m.scaled(Rat(1) / norm);

        // The heavier signed part carries mass >= 1/2 > 1/3.
        Rat pos = 0, neg = 0;
        FinSet pos_pts, neg_pts;
        for (const auto& [atom, w] : item.normalized.weights()) {
            if (w > 0) {
                pos += w;
                pos_pts.push_back(atom.n);
            } else {
                neg += -w;
                neg_pts.push_back(atom.n);
            }
        }
        if (pos >= neg) {
            item.u_set = std::move(pos_pts);
            item.value = pos;
        } else {
            item.u_set = std::move(neg_pts);
            item.value = -neg;
        }
        out.push_back(std::move(item));
    }
    return out;
}

} // namespace idealab
