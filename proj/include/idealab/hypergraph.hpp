#ifndef IDEALAB_HYPERGRAPH_HPP
#define IDEALAB_HYPERGRAPH_HPP

#include "idealab/omega_set.hpp"
#include "idealab/partition.hpp"
#include "idealab/rational.hpp"
#include "idealab/submeasure.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace idealab {

/// Finite hypergraph: vertices 0..vertex_count-1, edges as sorted vertex-index
/// lists. No empty edges.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<std::size_t>> edges_;
};

/// Kneser hypergraph KG^r(m, k): vertices are the k-subsets of [0, m); edges
/// are the r-element sets of pairwise disjoint vertices. Requires r >= 2 and
/// r*k <= m.
Hypergraph kneser_generate(Nat m, Nat k, Nat r);

/// The k-subsets of [0, m) in the vertex order used by kneser_generate.
std::vector<FinSet> kneser_vertices(Nat m, Nat k);

/// Exact chromatic number by backtracking: the least class count admitting a
/// partition of the vertices with no edge monochromatic. Capped at 20
/// vertices. Throws if some edge is a singleton (no class count works).
std::size_t chromatic_exact(const Hypergraph& h);

/// Closed-form lower bound ceil((m - r(k-1)) / (r-1)) for KG^r(m,k).
std::size_t kneser_chromatic_lower_bound(Nat m, Nat k, Nat r);

/// H restricted to a vertex subset: keeps exactly the edges inside it.
Hypergraph restrict(const Hypergraph& h, const std::vector<std::size_t>& vertex_subset);

/// One block of a hypergraph submeasure: a finite ground set G in omega, a
/// hypergraph H, and a bijection b: G -> V(H) (here: position in `ground`
/// maps to the vertex index).
struct HypergraphBlock {
    FinSet ground;   // sorted; ground[i] corresponds to vertex i
    Hypergraph graph;

    void validate() const;
    Nat lo() const { return ground.empty() ? 0 : ground.front(); }
    Nat hi() const { return ground.empty() ? 0 : ground.back() + 1; }

    /// max over edges of |b[A /\ G] /\ e| / |e| for an explicit point set.
    Rat ratio_on(const FinSet& points) const;
    Rat ratio_on(const OmegaSet& a) const;
};

/// Stream of hypergraph blocks with pairwise disjoint ground sets in
/// increasing position order; nullopt ends a finite stream.
using HypergraphBlockStreamFn = std::function<std::optional<HypergraphBlock>(std::size_t)>;

/// sup over blocks (and over each block's edges) of the hit ratio; always in
/// [0, 1].
Submeasure hypergraph_submeasure(HypergraphBlockStreamFn blocks, std::string name = "hypergraph");
Submeasure hypergraph_submeasure(std::vector<HypergraphBlock> blocks,
                                 std::string name = "hypergraph");

/// A base block family whose k-th member has all edges of size 2^k, plus the
/// increasing index selection n_0 < n_1 < ... chosen so that every edge e of
/// H_{n_k} satisfies |e| > k * (total ground size of the earlier selections).
struct ADLFamilyConfig {
    std::vector<HypergraphBlock> base_blocks;    // materialized prefix of the stream
    std::vector<std::size_t> selected;           // indices into the base stream

    const HypergraphBlock& selected_block(std::size_t k) const {
        return base_blocks.at(selected.at(k));
    }
    /// Exact check of the edge-size inequality for every k and every edge.
    bool inequality_holds() const;
};

struct AdlSelectResult {
    bool success = false;
    ADLFamilyConfig config;
    std::string diagnostic;
};

/// Greedy minimal selection satisfying the edge-size inequality, searching
/// base indices up to index_budget.
AdlSelectResult adl_select(const HypergraphBlockStreamFn& blocks, std::size_t depth,
                           std::size_t index_budget);

/// Standard base family for the construction: block k is a complete
/// 2^k-uniform single-edge hypergraph on a fresh ground interval of size 2^k.
HypergraphBlockStreamFn adl_base_blocks();

/// Kneser-backed base family with strictly growing chromatic numbers: block k
/// (for k >= 1) is the complete 2^k-uniform hypergraph on (2^k - 1)(k + 1) + 1
/// vertices, i.e. KG^{2^k}(m, 1) with chromatic number exactly k + 2. Edge
/// enumeration caps the depth at three blocks; deeper runs use the scalable
/// single-edge family.
HypergraphBlockStreamFn adl_kneser_blocks();

/// The submeasure of the selected blocks restricted to selection positions in
/// M; M = omega keeps all selected blocks.
Submeasure adl_ideal(const ADLFamilyConfig& config, const OmegaSet& m);

/// Witness that a partition scheme cannot tame the family: a decreasing chain
/// of cells, block indices, and edges lying inside the cells, whose diagonal
/// union hits each used edge fully (per-edge ratio exactly 1).
struct NppWitness {
    bool success = false;
    Chain chain;
    std::vector<std::size_t> block_indices;          // n_0 < n_1 < ...
    std::vector<std::vector<std::size_t>> edges;     // e_k as vertex indices
    std::vector<FinSet> edge_grounds;                // b^-1[e_k]
    OmegaSet diagonal_union = OmegaSet::none();      // B_M
    std::vector<Rat> ratios;                         // per k in M: exact block ratio of B_M
    std::string diagnostic;
    std::size_t failed_level = 0;
};

NppWitness npp_failure_witness(const HypergraphBlockStreamFn& blocks, const PartitionScheme& scheme,
                               std::size_t depth, const std::vector<std::size_t>& m_set,
                               std::size_t index_budget);

/// Evidence report for non-isomorphism of two selections under a candidate
/// bijection of omega.
struct NonIsoIndexReport {
    std::size_t k = 0;
    enum class Status { Evidence, NoEvidence, Unknown } status = Status::Unknown;
    Rat ratio;
    std::string note;
};

struct NonIsoEvidence {
    FinSet witness_set;                      // A = union of the A_k
    std::vector<NonIsoIndexReport> alpha_side;  // ratios of A on M_alpha blocks
    std::vector<NonIsoIndexReport> beta_side;   // ratios of phi[A] on M_beta blocks
};

NonIsoEvidence nonisomorphism_evidence(const ADLFamilyConfig& config,
                                       const std::vector<std::size_t>& m_alpha,
                                       const std::vector<std::size_t>& m_beta,
                                       const std::function<Nat(Nat)>& phi_map, Nat horizon);

} // namespace idealab

#endif
