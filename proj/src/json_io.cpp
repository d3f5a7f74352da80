#include "idealab/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace idealab {

Json rat_to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(BigInt(j.get<long long>()));
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw std::invalid_argument("rational expected as \"p/q\" string");
}

Json omega_to_json(const OmegaSet& a) {
    Json j;
    switch (a.kind()) {
        case OmegaSet::Kind::Finite:
            j["kind"] = "finite";
            j["elements"] = a.finite_elements();
            break;
        case OmegaSet::Kind::Cofinite:
            j["kind"] = "cofinite";
            j["excluded"] = a.cofinite_excluded();
            break;
        case OmegaSet::Kind::BlockUnion: {
            j["kind"] = "blocks";
            Json blocks = Json::array();
            for (const Block& b : a.blocks_below(Nat{1} << 40, /*must_end=*/true))
                blocks.push_back(Json::array({b.lo, b.hi}));
            j["blocks"] = blocks;
            break;
        }
        case OmegaSet::Kind::Program: {
            j["kind"] = "program";
            j["name"] = a.program_name();
            j["params"] = a.program_params();
            break;
        }
    }
    return j;
}

OmegaSet omega_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") return OmegaSet::finite(j.at("elements").get<FinSet>());
    if (kind == "cofinite") return OmegaSet::cofinite(j.at("excluded").get<FinSet>());
    if (kind == "blocks") {
        std::vector<Block> blocks;
        for (const auto& b : j.at("blocks")) {
            if (!b.is_array() || b.size() != 2)
                throw std::invalid_argument("block must be a [lo, hi) pair");
            blocks.push_back(Block{b[0].get<Nat>(), b[1].get<Nat>()});
        }
        return OmegaSet::block_union(std::move(blocks));
    }
    if (kind == "program") {
        std::string name = j.at("name").get<std::string>();
        std::vector<Nat> params;
        if (j.contains("params")) {
            const Json& p = j.at("params");
            if (p.is_object()) {
                for (const auto& [key, value] : p.items()) {
                    (void)key;
                    params.push_back(value.get<Nat>());
                }
            } else if (p.is_array()) {
                for (const auto& value : p) params.push_back(value.get<Nat>());
            }
        }
        return named_program(name, params);
    }
    throw std::invalid_argument("unknown omega-set kind: " + kind);
}

PartitionScheme scheme_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "residue") {
        Nat base = j.value("base", Nat{2});
        return PartitionScheme::residue(base);
    }
    if (kind == "trivial") return PartitionScheme::trivial();
    throw std::invalid_argument("unknown partition scheme kind: " + kind);
}

namespace {

WeightFn weight_from_json(const Json& j) {
    if (j.is_string()) return weight_by_name(j.get<std::string>());
    if (j.is_object() && j.value("kind", "") == "formula")
        return weight_by_name(j.at("name").get<std::string>());
    throw std::invalid_argument("weight stream descriptor expected");
}

} // namespace

Submeasure submeasure_from_json(const Json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "summable") return make_summable(weight_from_json(j.at("f")));
    if (family == "counting") return make_counting();
    if (family == "asymptotic_density") return make_asymptotic_density();
    if (family == "erdos_ulam") return make_erdos_ulam(weight_from_json(j.at("f")));
    if (family == "trace_null") return make_trace_null();
    if (family == "density") {
        if (j.contains("preset"))
            return make_density(preset_block_stream(j.at("preset").get<std::string>()),
                                "density-" + j.at("preset").get<std::string>());
        std::vector<MeasureBlock> blocks;
        for (const auto& bj : j.at("blocks")) {
            MeasureBlock b;
            b.support = bj.at("support").get<FinSet>();
            for (const auto& w : bj.at("weights")) b.weights.push_back(rat_from_json(w));
            if (b.support.size() != b.weights.size())
                throw std::invalid_argument("support/weights length mismatch");
            blocks.push_back(std::move(b));
        }
        return make_density(std::move(blocks));
    }
    if (family == "hypergraph") {
        std::string ref = j.value("blocks_ref", "adl_base");
        if (ref != "adl_base") throw std::invalid_argument("unknown blocks_ref: " + ref);
        std::size_t depth = j.value("depth", std::size_t{5});
        auto sel = adl_select(adl_base_blocks(), depth, 64);
        if (!sel.success) throw std::invalid_argument("selection failed: " + sel.diagnostic);
        return adl_ideal(sel.config, OmegaSet::all());
    }
    throw std::invalid_argument("unknown submeasure family: " + family);
}

Json finmeasure_to_json(const FinMeasure& m) {
    Json weights = Json::object();
    for (const auto& [atom, w] : m.weights()) weights[atom.str()] = rat_str(w);
    Json j;
    j["weights"] = weights;
    return j;
}

FinMeasure finmeasure_from_json(const Json& j) {
    FinMeasure m;
    for (const auto& [key, value] : j.at("weights").items()) {
        Rat w = rat_from_json(value);
        if (key == "p") m.set(Atom::p(), w);
        else m.set(Atom::point(std::stoull(key)), w);
    }
    return m;
}

Json hypergraph_to_json(const Hypergraph& h) {
    Json j;
    Json verts = Json::array();
    for (std::size_t v = 0; v < h.vertex_count(); ++v) verts.push_back(v);
    j["vertices"] = verts;
    j["edges"] = h.edges();
    return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
    std::size_t count = j.at("vertices").size();
    std::vector<std::vector<std::size_t>> edges;
    for (const auto& e : j.at("edges")) edges.push_back(e.get<std::vector<std::size_t>>());
    return Hypergraph(count, std::move(edges));
}

Json adl_config_to_json(const ADLFamilyConfig& c) {
    Json j;
    j["selected"] = c.selected;
    Json blocks = Json::array();
    for (const auto& b : c.base_blocks) {
        Json bj;
        bj["ground"] = b.ground;
        bj["graph"] = hypergraph_to_json(b.graph);
        blocks.push_back(std::move(bj));
    }
    j["base_blocks"] = blocks;
    j["inequality_holds"] = c.inequality_holds();
    return j;
}

ADLFamilyConfig adl_config_from_json(const Json& j) {
    ADLFamilyConfig c;
    c.selected = j.at("selected").get<std::vector<std::size_t>>();
    for (const auto& bj : j.at("base_blocks")) {
        HypergraphBlock b;
        b.ground = bj.at("ground").get<FinSet>();
        b.graph = hypergraph_from_json(bj.at("graph"));
        b.validate();
        c.base_blocks.push_back(std::move(b));
    }
    return c;
}

Json certificate_to_json(const MembershipCertificate& c) {
    Json j;
    j["kind"] = cert_kind_name(c.kind);
    j["epsilon"] = rat_str(c.epsilon);
    j["witness_m"] = c.witness_m;
    Json samples = Json::array();
    for (const auto& s : c.samples) {
        Json sj;
        sj["m"] = s.m;
        sj["n"] = s.n;
        sj["value"] = rat_str(s.value);
        sj["note"] = s.note;
        samples.push_back(std::move(sj));
    }
    j["samples"] = samples;
    j["note"] = c.note;
    return j;
}

Json stage1_to_json(const Stage1Result& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        j["failed_k"] = r.failed_k;
    }
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["k"] = it.k;
        ij["selected_index"] = it.selected_index;
        ij["restricted_norm"] = rat_str(it.restricted_norm);
        ij["threshold"] = rat_str(it.threshold);
        ij["attained"] = rat_str(it.attained);
        ij["u_set"] = it.u_set;
        ij["b_set"] = it.b_set;
        ij["theta"] = finmeasure_to_json(it.theta);
        ij["nu"] = finmeasure_to_json(it.nu);
        ij["off_p_norm"] = rat_str(it.off_p_norm);
        items.push_back(std::move(ij));
    }
    j["items"] = items;
    return j;
}

Json stage2_to_json(const Stage2Result& r) {
    Json j;
    j["success"] = r.success;
    j["case_used"] = r.case_used;
    if (!r.success) j["diagnostic"] = r.diagnostic;
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["k"] = it.k;
        ij["pair"] = Json::array({it.first, it.second});
        ij["alpha"] = rat_str(it.alpha);
        ij["nu"] = finmeasure_to_json(it.nu);
        ij["norm"] = rat_str(it.norm);
        items.push_back(std::move(ij));
    }
    j["items"] = items;
    return j;
}

Json normalize_to_json(const std::vector<NormalizeItem>& items) {
    Json arr = Json::array();
    for (const auto& it : items) {
        Json ij;
        ij["normalized"] = finmeasure_to_json(it.normalized);
        ij["u_set"] = it.u_set;
        ij["value"] = rat_str(it.value);
        arr.push_back(std::move(ij));
    }
    Json j;
    j["items"] = arr;
    return j;
}

Json npp_witness_to_json(const NppWitness& w) {
    Json j;
    j["success"] = w.success;
    if (!w.success) {
        j["diagnostic"] = w.diagnostic;
        j["failed_level"] = w.failed_level;
        return j;
    }
    j["chain"] = w.chain.cells;
    j["block_indices"] = w.block_indices;
    j["edges"] = w.edges;
    j["edge_grounds"] = w.edge_grounds;
    j["diagonal_union"] = omega_to_json(w.diagonal_union);
    Json ratios = Json::array();
    for (const auto& r : w.ratios) ratios.push_back(rat_str(r));
    j["ratios"] = ratios;
    return j;
}

Json summable_extension_to_json(const SummableExtensionResult& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        return j;
    }
    j["selected"] = r.selected;
    Json masses = Json::array(), thresholds = Json::array(), sums = Json::array();
    for (const auto& v : r.masses) masses.push_back(rat_str(v));
    for (const auto& v : r.thresholds) thresholds.push_back(rat_str(v));
    for (const auto& v : r.per_block_sums) sums.push_back(rat_str(v));
    j["masses"] = masses;
    j["thresholds"] = thresholds;
    j["per_block_sums"] = sums;
    Json table = Json::array();
    for (const auto& [n, w] : r.weight_table) table.push_back(Json::array({n, rat_str(w)}));
    j["weights"] = table;
    return j;
}

Json fin_to_exh_to_json(const FinToExhResult& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        return j;
    }
    j["cuts"] = r.cuts;
    Json vals = Json::array();
    for (const auto& v : r.interval_values) vals.push_back(rat_str(v));
    j["interval_values"] = vals;
    return j;
}

Json snpp_to_json(const SnppDecomposition& d) {
    Json j;
    j["partition_ok"] = d.partition_ok;
    j["core"] = d.core;
    j["pieces"] = d.pieces;
    return j;
}

Json partition_selection_to_json(const PartitionSelectionResult& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        j["failed_level"] = r.failed_level;
        return j;
    }
    j["chain"] = r.chain.cells;
    j["sets"] = r.sets;
    Json vals = Json::array(), probes = Json::array();
    for (const auto& v : r.values) vals.push_back(rat_str(v));
    for (const auto& v : r.probe_values) probes.push_back(rat_str(v));
    j["values"] = vals;
    j["probe_values"] = probes;
    return j;
}

Json sign_selection_to_json(const SignSelectionResult& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        j["failed_level"] = r.failed_level;
        return j;
    }
    j["signs"] = r.signs;
    j["sets"] = r.sets;
    Json vals = Json::array(), probes = Json::array();
    for (const auto& v : r.values) vals.push_back(rat_str(v));
    for (const auto& [p, m] : r.probe_values)
        probes.push_back(Json::array({rat_str(p), rat_str(m)}));
    j["values"] = vals;
    j["probe_values"] = probes;
    return j;
}

Json katetov_to_json(const KatetovReport& r) {
    Json j;
    switch (r.overall) {
        case KatetovReport::Overall::EvidencePositive: j["overall"] = "evidence_positive"; break;
        case KatetovReport::Overall::Falsified: j["overall"] = "falsified"; break;
        case KatetovReport::Overall::Inconclusive: j["overall"] = "inconclusive"; break;
    }
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["generator"] = it.generator;
        ij["certificate"] = certificate_to_json(it.cert);
        items.push_back(std::move(ij));
    }
    j["items"] = items;
    return j;
}

Json splitting_to_json(const SplittingReport& r) {
    Json j;
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["test"] = it.test_index;
        ij["precondition_ok"] = it.precondition_ok;
        ij["split"] = it.split;
        if (it.split) {
            ij["splitter"] = it.splitter;
            ij["left"] = certificate_to_json(it.left);
            ij["right"] = certificate_to_json(it.right);
        }
        items.push_back(std::move(ij));
    }
    j["items"] = items;
    j["all_split"] = r.all_split();
    return j;
}

Json dominance_to_json(const DominanceEvidence& d) {
    Json j;
    j["found"] = d.found;
    if (d.found) j["from"] = d.from;
    else j["last_violation"] = d.last_violation;
    return j;
}

Json tukey_to_json(const TukeyDemoReport& r) {
    Json j;
    j["success"] = r.success;
    if (!r.success) {
        j["diagnostic"] = r.diagnostic;
        return j;
    }
    Json exts = Json::array();
    for (const auto& e : r.extensions) exts.push_back(summable_extension_to_json(e));
    j["extensions"] = exts;
    Json matrix = Json::array();
    for (const auto& row : r.matrix) {
        Json rj = Json::array();
        for (const auto& d : row) rj.push_back(dominance_to_json(d));
        matrix.push_back(std::move(rj));
    }
    j["dominance_matrix"] = matrix;
    Json inc = Json::array();
    for (const auto& it : r.inclusions) {
        Json ij;
        ij["witness"] = it.witness;
        ij["generator"] = it.generator;
        ij["bound"] = rat_str(it.bound);
        inc.push_back(std::move(ij));
    }
    j["inclusions"] = inc;
    return j;
}

std::string json_hash(const Json& j) {
    std::string dump = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace idealab
