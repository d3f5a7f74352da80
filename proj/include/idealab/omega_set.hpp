#ifndef IDEALAB_OMEGA_SET_HPP
#define IDEALAB_OMEGA_SET_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace idealab {

using Nat = std::uint64_t;

/// Sorted, duplicate-free finite set of naturals. The workhorse value for all
/// exact finite evaluation.
using FinSet = std::vector<Nat>;

FinSet fs_normalize(FinSet v);
FinSet fs_union(const FinSet& a, const FinSet& b);
FinSet fs_intersect(const FinSet& a, const FinSet& b);
FinSet fs_minus(const FinSet& a, const FinSet& b);
bool fs_contains(const FinSet& a, Nat x);
bool fs_subset(const FinSet& a, const FinSet& b);
bool fs_disjoint(const FinSet& a, const FinSet& b);

class OmegaSet;

/// Pointwise intersection, as a programmatic set.
OmegaSet omega_intersect(const OmegaSet& a, const OmegaSet& b);

/// Registered total membership formulas, so programmatic sets stay
/// serializable: "evens", "odds", "all", "none", "squares", "cubes",
/// "powers_of_two", "pow2_minus_1", "factorials", "primes",
/// "residue" (mod, rem), "bit" (k), "hash_dense" (seed, keep, den),
/// "alternating_string", "low_weight_string".
OmegaSet named_program(const std::string& name, const std::vector<Nat>& params = {});

/// A half-open block [lo, hi) of naturals.
struct Block {
    Nat lo = 0;
    Nat hi = 0;
    bool empty() const { return hi <= lo; }
};

/// Stream of blocks: blocks(k) returns the k-th block, or nullopt once the
/// stream is exhausted. Blocks must come in strictly increasing position
/// order (validated lazily on access).
using BlockStreamFn = std::function<std::optional<Block>(std::size_t)>;

/// Total decision procedure for a programmatic subset of omega.
using MembershipFn = std::function<bool(Nat)>;

/// A subset of omega with an exact prefix-materialization contract. Immutable
/// value; cheap to copy.
///
/// Variants: Finite (explicit elements), Cofinite (explicit excluded set),
/// BlockUnion (stream of disjoint finite blocks in increasing order), and
/// Program (a total membership procedure).
class OmegaSet {
public:
    enum class Kind { Finite, Cofinite, BlockUnion, Program };

    static OmegaSet finite(FinSet elements);
    static OmegaSet cofinite(FinSet excluded);
    static OmegaSet block_union(BlockStreamFn blocks);
    static OmegaSet block_union(std::vector<Block> blocks);
    static OmegaSet program(std::string name, MembershipFn fn);
    static OmegaSet program(std::string name, std::vector<Nat> params, MembershipFn fn);

    /// Named whole-space / empty-set values.
    static OmegaSet all() { return cofinite({}); }
    static OmegaSet none() { return finite({}); }

    Kind kind() const;
    bool contains(Nat n) const;

    /// Exactly A intersected with [0, horizon), sorted.
    FinSet prefix(Nat horizon) const;

    /// Complement as an OmegaSet (Finite <-> Cofinite; other variants become
    /// negated programs).
    OmegaSet complement() const;

    /// For Finite variant only: the explicit element list.
    const FinSet& finite_elements() const;
    /// For Cofinite variant only: the explicit excluded list.
    const FinSet& cofinite_excluded() const;
    /// For BlockUnion only: the blocks starting below the horizon. Throws when
    /// the stream continues past the horizon and `must_end` is set.
    std::vector<Block> blocks_below(Nat horizon, bool must_end = false) const;
    /// For Program only: the registered formula name and its parameters.
    const std::string& program_name() const;
    const std::vector<Nat>& program_params() const;

    /// Human-readable descriptor (also used in transcripts).
    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit OmegaSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

} // namespace idealab

#endif
