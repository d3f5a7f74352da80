#ifndef IDEALAB_PARTITION_HPP
#define IDEALAB_PARTITION_HPP

#include "idealab/omega_set.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace idealab {

/// A finite partition of omega, represented intensionally: a total labeling
/// procedure with the (finite) cell count declared up front. Extensional cell
/// listings are derived on demand per horizon.
struct FinitePartition {
    std::size_t cell_count = 1;
    std::function<std::size_t(Nat)> label;  // total, range [0, cell_count)
    std::size_t level = 0;

    /// The cell with the given index, as a programmatic OmegaSet.
    OmegaSet cell(std::size_t index, const std::string& tag = "") const;
};

/// A refining stream of finite partitions together with the child->parent cell
/// maps. Level 0 is the coarsest.
class PartitionScheme {
public:
    using LevelFn = std::function<FinitePartition(std::size_t)>;
    // parent(level, child_index) for level >= 1: the containing cell at level-1.
    using ParentFn = std::function<std::size_t(std::size_t, std::size_t)>;

    PartitionScheme(LevelFn levels, ParentFn parent, std::string name = "custom");

    /// Residue scheme: level l partitions omega by residue mod base^l.
    static PartitionScheme residue(Nat base);
    /// The trivial scheme with the single cell omega at every level.
    static PartitionScheme trivial();

    FinitePartition level(std::size_t l) const;
    std::size_t parent_cell(std::size_t l, std::size_t child_index) const;
    const std::string& name() const { return name_; }

private:
    LevelFn levels_;
    ParentFn parent_;
    std::string name_;
};

/// A decreasing chain of cells, entry l being a cell index of level l.
struct Chain {
    std::vector<std::size_t> cells;
};

struct RefinementVerdict {
    bool verified = true;
    Nat counterexample_n = 0;      // meaningful when !verified
    std::size_t counterexample_level = 0;
};

/// Checks parent consistency for all n < horizon and all levels below
/// max_level. Falsifies with an explicit witness (n, level) when the labeling
/// of level+1 does not refine level.
RefinementVerdict refinement_check(const PartitionScheme& scheme, std::size_t max_level, Nat horizon);

/// All decreasing chains of length depth; one per cell of level depth-1.
std::vector<Chain> chain_enumerate(const PartitionScheme& scheme, std::size_t depth);

/// True when the chain is decreasing under the scheme's parent maps.
bool chain_valid(const PartitionScheme& scheme, const Chain& chain);

} // namespace idealab

#endif
