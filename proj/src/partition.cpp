#include "idealab/partition.hpp"

#include <stdexcept>

namespace idealab {

OmegaSet FinitePartition::cell(std::size_t index, const std::string& tag) const {
    if (index >= cell_count) throw std::invalid_argument("cell index out of range");
    auto lab = label;
    std::string name = tag.empty()
        ? "cell(level=" + std::to_string(level) + ",idx=" + std::to_string(index) + ")"
        : tag;
    return OmegaSet::program(name, [lab, index](Nat n) { return lab(n) == index; });
}

PartitionScheme::PartitionScheme(LevelFn levels, ParentFn parent, std::string name)
    : levels_(std::move(levels)), parent_(std::move(parent)), name_(std::move(name)) {}

PartitionScheme PartitionScheme::residue(Nat base) {
    if (base < 2) throw std::invalid_argument("residue scheme needs base >= 2");
    auto levels = [base](std::size_t l) {
        Nat mod = 1;
        for (std::size_t i = 0; i < l; ++i) mod *= base;
        FinitePartition p;
        p.cell_count = static_cast<std::size_t>(mod);
        p.level = l;
        p.label = [mod](Nat n) { return static_cast<std::size_t>(n % mod); };
        return p;
    };
    auto parent = [base](std::size_t l, std::size_t child) -> std::size_t {
        if (l == 0) throw std::invalid_argument("level 0 has no parent");
        Nat mod = 1;
        for (std::size_t i = 0; i + 1 < l; ++i) mod *= base;
        return static_cast<std::size_t>(child % mod);
    };
    return PartitionScheme(levels, parent, "residue-mod-" + std::to_string(base) + "^l");
}

PartitionScheme PartitionScheme::trivial() {
    auto levels = [](std::size_t l) {
        FinitePartition p;
        p.cell_count = 1;
        p.level = l;
        p.label = [](Nat) { return std::size_t{0}; };
        return p;
    };
    auto parent = [](std::size_t, std::size_t) { return std::size_t{0}; };
    return PartitionScheme(levels, parent, "trivial");
}

FinitePartition PartitionScheme::level(std::size_t l) const { return levels_(l); }

std::size_t PartitionScheme::parent_cell(std::size_t l, std::size_t child_index) const {
    return parent_(l, child_index);
}

RefinementVerdict refinement_check(const PartitionScheme& scheme, std::size_t max_level, Nat horizon) {
    if (max_level < 1) throw std::invalid_argument("refinement_check needs max_level >= 1");
    RefinementVerdict v;
    std::vector<FinitePartition> parts;
    parts.reserve(max_level);
    for (std::size_t l = 0; l < max_level; ++l) parts.push_back(scheme.level(l));
    for (std::size_t l = 0; l + 1 < max_level; ++l) {
        for (Nat n = 0; n < horizon; ++n) {
            std::size_t child = parts[l + 1].label(n);
            if (scheme.parent_cell(l + 1, child) != parts[l].label(n)) {
                v.verified = false;
                v.counterexample_n = n;
                v.counterexample_level = l;
                return v;
            }
        }
    }
    return v;
}

std::vector<Chain> chain_enumerate(const PartitionScheme& scheme, std::size_t depth) {
    if (depth < 1) throw std::invalid_argument("chain_enumerate needs depth >= 1");
    std::vector<Chain> out;
    FinitePartition bottom = scheme.level(depth - 1);
    for (std::size_t c = 0; c < bottom.cell_count; ++c) {
        Chain chain;
        chain.cells.assign(depth, 0);
        chain.cells[depth - 1] = c;
        for (std::size_t l = depth - 1; l > 0; --l) {
            chain.cells[l - 1] = scheme.parent_cell(l, chain.cells[l]);
        }
        out.push_back(std::move(chain));
    }
    return out;
}

bool chain_valid(const PartitionScheme& scheme, const Chain& chain) {
    for (std::size_t l = 1; l < chain.cells.size(); ++l) {
        if (scheme.parent_cell(l, chain.cells[l]) != chain.cells[l - 1]) return false;
    }
    return true;
}

} // namespace idealab
