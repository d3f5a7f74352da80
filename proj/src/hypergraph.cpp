#include "idealab/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace idealab {

Hypergraph::Hypergraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.empty()) throw std::invalid_argument("empty hyperedge");
        if (e.back() >= vertex_count_) throw std::invalid_argument("edge vertex out of range");
    }
}

std::vector<FinSet> kneser_vertices(Nat m, Nat k) {
    std::vector<FinSet> out;
    FinSet cur;
    // k-subsets of [0, m) in lexicographic order.
    std::function<void(Nat)> rec = [&](Nat start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (Nat x = start; x + (k - cur.size()) <= m; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    if (k == 0) {
        out.push_back({});
        return out;
    }
    rec(0);
    return out;
}

Hypergraph kneser_generate(Nat m, Nat k, Nat r) {
    if (r < 2) throw std::invalid_argument("kneser_generate requires r >= 2");
    if (k < 1) throw std::invalid_argument("kneser_generate requires k >= 1");
    if (r * k > m) throw std::invalid_argument("kneser_generate requires r*k <= m");

    std::vector<FinSet> verts = kneser_vertices(m, k);
    if (verts.size() > 5000)
        throw std::invalid_argument("kneser_generate: vertex set too large");

    // Edges: r-element sets of pairwise disjoint vertices, in lexicographic
    // order of vertex-index tuples.
    std::vector<std::vector<std::size_t>> edges;
    std::vector<std::size_t> pickidx;
    FinSet used;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pickidx.size() == r) {
            edges.push_back(pickidx);
            return;
        }
        for (std::size_t v = start; v < verts.size(); ++v) {
            if (!fs_disjoint(used, verts[v])) continue;
            pickidx.push_back(v);
            FinSet saved = used;
            used = fs_union(used, verts[v]);
            rec(v + 1);
            used = std::move(saved);
            pickidx.pop_back();
        }
    };
    rec(0);
    return Hypergraph(verts.size(), std::move(edges));
}

std::size_t kneser_chromatic_lower_bound(Nat m, Nat k, Nat r) {
    if (r < 2) throw std::invalid_argument("requires r >= 2");
    Nat sub = r * (k - 1);
    if (m <= sub) return 1;
    Nat num = m - sub;
    Nat den = r - 1;
    return static_cast<std::size_t>((num + den - 1) / den);
}

namespace {

class ChromaticSolver {
public:
    explicit ChromaticSolver(const Hypergraph& h) : h_(h), color_(h.vertex_count(), 0) {
        edges_by_last_.resize(h.vertex_count());
        for (std::size_t e = 0; e < h_.edges().size(); ++e) {
            const auto& edge = h_.edges()[e];
            if (edge.size() == 1)
                throw std::invalid_argument("singleton edge admits no valid coloring");
            edges_by_last_[edge.back()].push_back(e);
        }
    }

    bool colorable(std::size_t classes) {
        classes_ = classes;
        return place(0, 0);
    }

private:
    bool place(std::size_t v, std::size_t used) {
        if (v == h_.vertex_count()) return true;
        std::size_t limit = std::min(used + 1, classes_);
        for (std::size_t c = 0; c < limit; ++c) {
            color_[v] = c;
            if (consistent(v)) {
                if (place(v + 1, std::max(used, c + 1))) return true;
            }
        }
        return false;
    }

    // Checks the edges whose last vertex is v: once fully assigned, an edge
    // must not be monochromatic.
    bool consistent(std::size_t v) const {
        for (std::size_t e : edges_by_last_[v]) {
            const auto& edge = h_.edges()[e];
            std::size_t c = color_[edge[0]];
            bool mono = true;
            for (std::size_t u : edge) {
                if (color_[u] != c) {
                    mono = false;
                    break;
                }
            }
            if (mono) return false;
        }
        return true;
    }

    const Hypergraph& h_;
    std::vector<std::size_t> color_;
    std::vector<std::vector<std::size_t>> edges_by_last_;
    std::size_t classes_ = 0;
};

} // namespace

std::size_t chromatic_exact(const Hypergraph& h) {
    if (h.vertex_count() > 20)
        throw std::invalid_argument("chromatic_exact capped at 20 vertices");
    if (h.vertex_count() == 0) return 0;
    ChromaticSolver solver(h);
    for (std::size_t c = 1;; ++c) {
        if (solver.colorable(c)) return c;
    }
}

Hypergraph restrict(const Hypergraph& h, const std::vector<std::size_t>& vertex_subset) {
    std::vector<std::size_t> w = vertex_subset;
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (!w.empty() && w.back() >= h.vertex_count())
        throw std::invalid_argument("restriction subset not contained in the vertex set");

    std::vector<std::size_t> reindex(h.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < w.size(); ++i) reindex[w[i]] = i;

    std::vector<std::vector<std::size_t>> edges;
    for (const auto& e : h.edges()) {
        bool inside = true;
        for (std::size_t v : e) {
            if (reindex[v] == SIZE_MAX) {
                inside = false;
                break;
            }
        }
        if (!inside) continue;
        std::vector<std::size_t> mapped;
        mapped.reserve(e.size());
        for (std::size_t v : e) mapped.push_back(reindex[v]);
        edges.push_back(std::move(mapped));
    }
    return Hypergraph(w.size(), std::move(edges));
}

void HypergraphBlock::validate() const {
    if (ground.size() != graph.vertex_count())
        throw std::invalid_argument("ground set size must match vertex count");
}

Rat HypergraphBlock::ratio_on(const FinSet& points) const {
    // Vertex indices hit by the point set.
    std::vector<bool> hit(graph.vertex_count(), false);
    {
        std::size_t i = 0, j = 0;
        while (i < ground.size() && j < points.size()) {
            if (ground[i] < points[j]) ++i;
            else if (points[j] < ground[i]) ++j;
            else {
                hit[i] = true;
                ++i;
                ++j;
            }
        }
    }
    Rat best = 0;
    for (const auto& e : graph.edges()) {
        std::size_t count = 0;
        for (std::size_t v : e) {
            if (hit[v]) ++count;
        }
        if (count > 0) {
            Rat r(count, e.size());
            if (r > best) best = r;
        }
    }
    return best;
}

Rat HypergraphBlock::ratio_on(const OmegaSet& a) const {
    FinSet pts;
    for (Nat x : ground) {
        if (a.contains(x)) pts.push_back(x);
    }
    return ratio_on(pts);
}

namespace {

class HypergraphSub final : public SubmeasureImpl, public BlockwiseView {
public:
    HypergraphSub(HypergraphBlockStreamFn blocks, std::string name)
        : blocks_(std::move(blocks)), name_(std::move(name)) {}

    Rat eval(const FinSet& f) const override {
        Rat best = 0;
        if (f.empty()) return best;
        Nat limit = f.back() + 1;
        for (std::size_t k = 0;; ++k) {
            const HypergraphBlock* b = block_at(k);
            if (!b) break;
            if (b->lo() >= limit) break;
            Rat v = b->ratio_on(f);
            if (v > best) best = v;
        }
        return best;
    }
    StructureTag tag() const override { return StructureTag::Hypergraph; }
    const BlockwiseView* blockwise() const override { return this; }
    std::optional<Rat> global_bound() const override { return Rat(1); }
    std::string describe() const override { return name_; }

    std::optional<std::size_t> block_count() const override {
        for (std::size_t k = 0;; ++k) {
            const HypergraphBlock* b = block_at(k);
            if (!b) break;
            if (b->lo() > (Nat{1} << 20)) return std::nullopt;
        }
        return finite_count_;
    }
    Nat block_lo(std::size_t k) const override { return require_block(k)->lo(); }
    Nat block_hi(std::size_t k) const override { return require_block(k)->hi(); }
    Rat block_value(std::size_t k, const OmegaSet& a) const override {
        return require_block(k)->ratio_on(a);
    }

private:
    const HypergraphBlock* block_at(std::size_t k) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (cache_.size() <= k) {
            if (finite_count_) return nullptr;
            auto b = blocks_(cache_.size());
            if (!b) {
                finite_count_ = cache_.size();
                return nullptr;
            }
            b->validate();
            if (!cache_.empty() && b->lo() < cache_.back().hi())
                throw std::invalid_argument("hypergraph blocks out of order");
            cache_.push_back(std::move(*b));
        }
        return &cache_[k];
    }
    const HypergraphBlock* require_block(std::size_t k) const {
        const HypergraphBlock* b = block_at(k);
        if (!b) throw std::out_of_range("block index beyond finite stream");
        return b;
    }

    HypergraphBlockStreamFn blocks_;
    std::string name_;
    mutable std::mutex mu_;
    mutable std::deque<HypergraphBlock> cache_;
    mutable std::optional<std::size_t> finite_count_;
};

} // namespace

Submeasure hypergraph_submeasure(HypergraphBlockStreamFn blocks, std::string name) {
    return Submeasure(std::make_shared<HypergraphSub>(std::move(blocks), std::move(name)));
}

Submeasure hypergraph_submeasure(std::vector<HypergraphBlock> blocks, std::string name) {
    auto list = std::make_shared<std::vector<HypergraphBlock>>(std::move(blocks));
    return hypergraph_submeasure(
        [list](std::size_t k) -> std::optional<HypergraphBlock> {
            if (k >= list->size()) return std::nullopt;
            return (*list)[k];
        },
        std::move(name));
}

bool ADLFamilyConfig::inequality_holds() const {
    Nat earlier = 0;
    for (std::size_t k = 0; k < selected.size(); ++k) {
        const HypergraphBlock& b = selected_block(k);
        for (const auto& e : b.graph.edges()) {
            if (!(e.size() > static_cast<std::size_t>(k) * earlier)) return false;
        }
        earlier += b.ground.size();
    }
    return true;
}

AdlSelectResult adl_select(const HypergraphBlockStreamFn& blocks, std::size_t depth,
                           std::size_t index_budget) {
    AdlSelectResult res;
    std::vector<HypergraphBlock> materialized;
    auto fetch = [&](std::size_t idx) -> const HypergraphBlock* {
        while (materialized.size() <= idx) {
            auto b = blocks(materialized.size());
            if (!b) return nullptr;
            b->validate();
            materialized.push_back(std::move(*b));
        }
        return &materialized[idx];
    };

    std::vector<std::size_t> selected;
    Nat earlier = 0;
    for (std::size_t k = 0; k < depth; ++k) {
        std::size_t start = selected.empty() ? 0 : selected.back() + 1;
        bool found = false;
        for (std::size_t n = start; n <= index_budget; ++n) {
            const HypergraphBlock* b = fetch(n);
            if (!b) break;
            bool ok = true;
            for (const auto& e : b->graph.edges()) {
                if (!(e.size() > k * earlier)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                selected.push_back(n);
                earlier += b->ground.size();
                found = true;
                break;
            }
        }
        if (!found) {
            res.diagnostic = "no base index satisfies the edge-size inequality at position " +
                             std::to_string(k) + " within the index budget";
            return res;
        }
    }

    res.success = true;
    res.config.selected = std::move(selected);
    // Keep the materialized prefix through the last selected index.
    std::size_t keep = res.config.selected.back() + 1;
    materialized.resize(std::min(materialized.size(), keep));
    res.config.base_blocks = std::move(materialized);
    return res;
}

HypergraphBlockStreamFn adl_base_blocks() {
    return [](std::size_t k) -> std::optional<HypergraphBlock> {
        if (k >= 20) return std::nullopt;  // the next ground would hold 2^20 points
        Nat size = Nat{1} << k;
        Nat start = (Nat{1} << k) - 1;  // 2^0 + ... + 2^{k-1}
        HypergraphBlock b;
        for (Nat i = 0; i < size; ++i) b.ground.push_back(start + i);
        std::vector<std::size_t> edge(static_cast<std::size_t>(size));
        for (std::size_t i = 0; i < edge.size(); ++i) edge[i] = i;
        b.graph = Hypergraph(static_cast<std::size_t>(size), {edge});
        return b;
    };
}

HypergraphBlockStreamFn adl_kneser_blocks() {
    return [](std::size_t k) -> std::optional<HypergraphBlock> {
        if (k >= 3) return std::nullopt;
        HypergraphBlock b;
        if (k == 0) {
            b.ground = {0};
            b.graph = Hypergraph(1, {{0}});
            return b;
        }
        Nat edge_size = Nat{1} << k;
        Nat m = (edge_size - 1) * (static_cast<Nat>(k) + 1) + 1;
        Nat start = 8 * k;  // past the earlier grounds
        for (Nat i = 0; i < m; ++i) b.ground.push_back(start + i);
        b.graph = kneser_generate(m, 1, edge_size);
        return b;
    };
}

Submeasure adl_ideal(const ADLFamilyConfig& config, const OmegaSet& m) {
    std::vector<HypergraphBlock> kept;
    for (std::size_t k = 0; k < config.selected.size(); ++k) {
        if (m.contains(k)) kept.push_back(config.selected_block(k));
    }
    return hypergraph_submeasure(std::move(kept), "adl-ideal");
}

NppWitness npp_failure_witness(const HypergraphBlockStreamFn& blocks, const PartitionScheme& scheme,
                               std::size_t depth, const std::vector<std::size_t>& m_set,
                               std::size_t index_budget) {
    NppWitness w;
    std::vector<HypergraphBlock> materialized;
    auto fetch = [&](std::size_t idx) -> const HypergraphBlock* {
        while (materialized.size() <= idx) {
            auto b = blocks(materialized.size());
            if (!b) return nullptr;
            b->validate();
            materialized.push_back(std::move(*b));
        }
        return &materialized[idx];
    };

    std::vector<FinitePartition> parts;
    for (std::size_t l = 0; l < depth; ++l) parts.push_back(scheme.level(l));

    std::vector<std::size_t> chain_cells;
    for (std::size_t level = 0; level < depth; ++level) {
        std::size_t start = w.block_indices.empty() ? 0 : w.block_indices.back() + 1;
        bool found = false;
        for (std::size_t n = start; n <= index_budget && !found; ++n) {
            const HypergraphBlock* b = fetch(n);
            if (!b) break;
            for (std::size_t e = 0; e < b->graph.edges().size() && !found; ++e) {
                const auto& edge = b->graph.edges()[e];
                // The edge's ground points must share one cell at this level
                // whose ancestry follows the chain built so far.
                FinSet gpts;
                gpts.reserve(edge.size());
                for (std::size_t v : edge) gpts.push_back(b->ground[v]);
                std::sort(gpts.begin(), gpts.end());
                std::size_t cell = parts[level].label(gpts[0]);
                bool ok = true;
                for (Nat x : gpts) {
                    for (std::size_t l = 0; l <= level; ++l) {
                        std::size_t want = (l < level) ? chain_cells[l] : cell;
                        if (parts[l].label(x) != want) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (ok) {
                    chain_cells.push_back(cell);
                    w.block_indices.push_back(n);
                    w.edges.push_back(edge);
                    w.edge_grounds.push_back(std::move(gpts));
                    found = true;
                }
            }
        }
        if (!found) {
            w.diagnostic = "no edge fits any cell at level " + std::to_string(level) +
                           " within the block budget";
            w.failed_level = level;
            return w;
        }
    }

    w.chain.cells = std::move(chain_cells);
    FinSet diag;
    for (std::size_t k : m_set) {
        if (k >= depth) throw std::invalid_argument("index set member beyond the depth");
        diag = fs_union(diag, w.edge_grounds[k]);
    }
    w.diagonal_union = OmegaSet::finite(diag);
    for (std::size_t k : m_set) {
        const HypergraphBlock* b = fetch(w.block_indices[k]);
        w.ratios.push_back(b->ratio_on(diag));
    }
    w.success = true;
    return w;
}

NonIsoEvidence nonisomorphism_evidence(const ADLFamilyConfig& config,
                                       const std::vector<std::size_t>& m_alpha,
                                       const std::vector<std::size_t>& m_beta,
                                       const std::function<Nat(Nat)>& phi_map, Nat horizon) {
    NonIsoEvidence ev;

    // All ground points of selections strictly earlier than position k.
    auto earlier_ground = [&](std::size_t k) {
        FinSet g;
        for (std::size_t i = 0; i < k && i < config.selected.size(); ++i)
            g = fs_union(g, config.selected_block(i).ground);
        return g;
    };

    std::vector<bool> in_alpha(config.selected.size(), false);
    FinSet witness;
    std::vector<bool> unknown_at(config.selected.size(), false);
    for (std::size_t k : m_alpha) {
        if (k >= config.selected.size())
            throw std::invalid_argument("tested index beyond the selection depth");
        in_alpha[k] = true;
        const HypergraphBlock& b = config.selected_block(k);
        if (b.graph.edges().empty()) continue;
        const auto& edge = b.graph.edges()[0];  // lexicographically least
        FinSet earlier = earlier_ground(k);
        FinSet part;
        for (std::size_t v : edge) {
            Nat x = b.ground[v];
            if (x >= horizon) continue;
            if (!fs_contains(earlier, phi_map(x))) part.push_back(x);
        }
        std::sort(part.begin(), part.end());
        // Evidence needs at least half of the edge to survive the exclusion.
        if (part.size() * 2 < edge.size()) unknown_at[k] = true;
        witness = fs_union(witness, part);
    }
    ev.witness_set = witness;

    // Image of the witness under the map; the map must be injective there.
    FinSet image;
    for (Nat x : witness) image.push_back(phi_map(x));
    image = fs_normalize(image);
    if (image.size() != witness.size())
        throw std::invalid_argument("map not injective on the tested range");

    for (std::size_t k : m_alpha) {
        NonIsoIndexReport r;
        r.k = k;
        r.ratio = config.selected_block(k).ratio_on(witness);
        if (unknown_at[k]) {
            r.status = NonIsoIndexReport::Status::Unknown;
            r.note = "the exclusion condition left fewer than half of the edge at this scale";
        } else if (r.ratio * 2 >= 1) {
            r.status = NonIsoIndexReport::Status::Evidence;
            r.note = "witness hits at least half of the chosen edge";
        } else {
            r.status = NonIsoIndexReport::Status::NoEvidence;
        }
        ev.alpha_side.push_back(std::move(r));
    }

    for (std::size_t k : m_beta) {
        if (k >= config.selected.size())
            throw std::invalid_argument("tested index beyond the selection depth");
        NonIsoIndexReport r;
        r.k = k;
        if (in_alpha[k]) {
            r.status = NonIsoIndexReport::Status::NoEvidence;
            r.note = "index shared with the other side; no separation possible here";
            r.ratio = config.selected_block(k).ratio_on(image);
            ev.beta_side.push_back(std::move(r));
            continue;
        }
        r.ratio = config.selected_block(k).ratio_on(image);
        if (r.ratio == 0) {
            r.status = NonIsoIndexReport::Status::Evidence;
            r.note = "image misses the block entirely";
        } else if (k >= 2 && r.ratio < Rat(1, BigInt(k))) {
            r.status = NonIsoIndexReport::Status::Evidence;
            r.note = "image ratio below 1/k";
        } else if (k < 2) {
            r.status = NonIsoIndexReport::Status::Unknown;
            r.note = "threshold 1/k not meaningful below k=2";
        } else {
            r.status = NonIsoIndexReport::Status::NoEvidence;
        }
        ev.beta_side.push_back(std::move(r));
    }
    return ev;
}

} // namespace idealab
