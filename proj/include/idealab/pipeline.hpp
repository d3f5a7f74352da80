#ifndef IDEALAB_PIPELINE_HPP
#define IDEALAB_PIPELINE_HPP

#include "idealab/measures.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

/// Stream of measures indexed by omega.
using MeasureSeqFn = std::function<FinMeasure(std::size_t)>;

/// Positive schedule indexed by step.
using ScheduleFn = std::function<Rat(std::size_t)>;

ScheduleFn default_schedule_N();  // N_k = k+1
ScheduleFn default_schedule_M();  // M_k = k+2

/// One step of the first disjointification stage: the selected input index,
/// the exact threshold and attained value, the carved clopen pieces, and the
/// rescaled measures.
struct Stage1Item {
    std::size_t k = 0;
    std::size_t selected_index = 0;  // n_k
    Rat restricted_norm;             // norm of mu_{n_k} on the excluded part
    Rat threshold;                   // N_k * M_k^2 * (restricted_norm + 1)
    Rat attained;                    // |mu-hat_{n_k}(U_k)|
    FinSet u_set;                    // U_k, a small clopen off p
    FinSet b_set;                    // B_k = A_k \ A_{k+1}
    FinMeasure theta;                // mu_{n_k} / (M_k * restricted_norm + M_k)
    FinMeasure nu;                   // theta restricted to B_k together with p
    Rat off_p_norm;                  // norm of nu away from p; exceeds N_k
    Rat m_value;                     // M_k (for the pointwise bound replay)
};

struct Stage1Result {
    bool success = false;
    std::vector<Stage1Item> items;
    std::string diagnostic;
    std::size_t failed_k = 0;
    FinSet excluded_final;  // off-p support consumed by the selections
};

/// Carves an input sequence concentrated at p into measures with pairwise
/// disjoint small supports off p. Searches input indices up to index_budget
/// per step; fails when no measure beats the growing threshold, which signals
/// that the concentration point is not strong at this scale.
Stage1Result disjointify_stage1(const MeasureSeqFn& seq, std::size_t count,
                                const ScheduleFn& n_schedule, const ScheduleFn& m_schedule,
                                std::size_t index_budget);

/// Pointwise bound satisfied by every stage-1 item on every clopen:
/// |nu_k(A)| < |theta_k(A)| + 1/M_k + 1/(k+1).
bool stage1_pointwise_bound_ok(const Stage1Item& item, const ClopenCode& a);

enum class CaseRule { Auto, ForceConvergent, ForceRatio };

struct Stage2Item {
    std::size_t k = 0;
    std::size_t first = 0, second = 0;  // input indices of the pair
    Rat alpha;                          // ratio used in the increasing-atom case
    FinMeasure nu;
    Rat norm;
};

struct Stage2Result {
    bool success = false;
    int case_used = 0;  // 1: bounded/convergent p-atoms; 2: increasing p-atoms
    std::vector<Stage2Item> items;
    std::string diagnostic;
};

/// Pairs the stage-1 outputs and removes the atom at p exactly. Case 1
/// subtracts consecutive measures; case 2 rescales the second of each pair by
/// the exact atom ratio. The dichotomy is undecidable from a finite window, so
/// the rule is explicit and the chosen case is recorded.
Stage2Result disjointify_stage2(const std::vector<FinMeasure>& rho,
                                const std::vector<Rat>& norm_floor, CaseRule rule,
                                const Rat& atom_threshold = Rat(1));

/// Normalized measures (norm exactly 1) together with, per input, a clopen
/// inside the support where the absolute value exceeds 1/3. Inputs must be
/// p-free, pairwise disjointly supported, and nonzero.
struct NormalizeItem {
    FinMeasure normalized;
    FinSet u_set;
    Rat value;  // measure of the normalized output on u_set
};

std::vector<NormalizeItem> anti_grothendieck_normalize(const std::vector<FinMeasure>& seq);

} // namespace idealab

#endif
