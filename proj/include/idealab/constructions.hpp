#ifndef IDEALAB_CONSTRUCTIONS_HPP
#define IDEALAB_CONSTRUCTIONS_HPP

#include "idealab/omega_set.hpp"
#include "idealab/partition.hpp"
#include "idealab/rational.hpp"
#include "idealab/submeasure.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

/// Extracts a summable weight from an unbounded block family: selected blocks
/// get geometric coefficients, and the per-point weight is the coefficient
/// times the block's point weight. The recorded values replay exactly.
struct SummableExtensionResult {
    bool success = false;
    std::string diagnostic;
    std::vector<std::size_t> selected;   // n_k for k = 1..depth (selected[k-1])
    std::vector<Rat> masses;             // block masses at the selections
    std::vector<Rat> thresholds;         // k * 2^k per step
    std::vector<std::pair<Nat, Rat>> weight_table;  // the extracted f, by point
    std::vector<Rat> per_block_sums;     // sum of f over each selected support; exceeds k

    Rat f_at(Nat n) const;
    /// rho(F) = sum over selections of 2^-k times the block value of F.
    Rat rho_eval(const FinSet& f, const std::vector<MeasureBlock>& blocks) const;
};

SummableExtensionResult summable_extension(const MeasureBlockStreamFn& blocks, std::size_t depth,
                                           std::size_t index_budget);

/// Materialized prefix of the blocks actually used by the selection, for
/// replay.
std::vector<MeasureBlock> materialize_blocks(const MeasureBlockStreamFn& blocks, std::size_t count);

/// Rescales an unbounded submeasure into one whose finite-value sets become
/// tail-vanishing: intervals of fast-growing value, each scaled down by its
/// index.
struct FinToExhResult {
    bool success = false;
    std::string diagnostic;
    std::vector<Nat> cuts;              // k_0 = 0 < k_1 < ...
    std::vector<Rat> interval_values;   // phi on [k_n, k_{n+1})
    Submeasure psi;                     // sup_n phi(. /\ X_n)/n (n >= 1)

    FinToExhResult() : psi(nullptr) {}

    /// Cut m to use for an ExhYes certificate at epsilon when phi's value on
    /// the set is at most bound: the first interval index beyond bound/epsilon.
    std::optional<Nat> cut_for_bound(const Rat& bound, const Rat& epsilon) const;
};

FinToExhResult fin_to_exh(const Submeasure& phi, std::size_t depth, Nat budget);

/// Greedy selection along a partition scheme: a decreasing chain of cells and
/// pairwise disjoint finite sets of fast-growing value inside them.
struct PartitionSelectionResult {
    bool success = false;
    std::string diagnostic;
    std::size_t failed_level = 0;
    Chain chain;
    std::vector<FinSet> sets;        // F_n with phi(F_n) >= n+1
    std::vector<Rat> values;         // exact phi(F_n)
    std::vector<Rat> probe_values;   // the winning cell's probe value per level
};

PartitionSelectionResult partition_unbounded_selection(const Submeasure& phi,
                                                       const PartitionScheme& scheme,
                                                       std::size_t depth, Nat budget);

/// Greedy sign selection against an arbitrary set sequence: at each step pick
/// the side (the set or its complement) with the larger budgeted growth, then
/// carve a fresh finite set of value >= n inside the running intersection.
struct SignSelectionResult {
    bool success = false;
    std::string diagnostic;
    std::size_t failed_level = 0;
    std::vector<int> signs;          // +1 or -1 per level
    std::vector<FinSet> sets;        // F_n with phi(F_n) >= n
    std::vector<Rat> values;
    std::vector<std::pair<Rat, Rat>> probe_values;  // (positive side, negative side)
};

SignSelectionResult sign_scheme_selection(const Submeasure& phi, const std::vector<OmegaSet>& sets,
                                          std::size_t depth, Nat budget);

/// Splits a set along a decreasing chain into finite pieces: successive
/// differences of the chain absorb the set, with the chain's core (at the
/// horizon) distributed one point per piece.
struct SnppDecomposition {
    std::vector<FinSet> pieces;
    FinSet core;                 // the chain intersection within the horizon
    bool partition_ok = false;   // pieces are disjoint and rebuild E at the horizon
};

SnppDecomposition snpp_decomposition(const OmegaSet& e, const std::vector<OmegaSet>& chain,
                                     Nat horizon);

} // namespace idealab

#endif
