#ifndef IDEALAB_JSON_IO_HPP
#define IDEALAB_JSON_IO_HPP

#include "idealab/constructions.hpp"
#include "idealab/hypergraph.hpp"
#include "idealab/measures.hpp"
#include "idealab/omega_set.hpp"
#include "idealab/orders.hpp"
#include "idealab/partition.hpp"
#include "idealab/pipeline.hpp"
#include "idealab/submeasure.hpp"

#include <json.hpp>

#include <string>

namespace idealab {

/// Deterministic JSON: insertion-ordered keys, rationals as "p/q" strings.
using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json omega_to_json(const OmegaSet& a);
OmegaSet omega_from_json(const Json& j);

PartitionScheme scheme_from_json(const Json& j);

/// Submeasure family descriptors:
///   {"family":"summable","f":{"kind":"formula","name":"reciprocal"}}
///   {"family":"asymptotic_density"}
///   {"family":"erdos_ulam","f":...}
///   {"family":"trace_null"}
///   {"family":"density","blocks":[{"support":[...],"weights":["p/q",...]},...]}
///   {"family":"hypergraph","blocks_ref":"adl_base","depth":N}
Submeasure submeasure_from_json(const Json& j);

Json finmeasure_to_json(const FinMeasure& m);
FinMeasure finmeasure_from_json(const Json& j);

Json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

Json adl_config_to_json(const ADLFamilyConfig& c);
ADLFamilyConfig adl_config_from_json(const Json& j);

Json certificate_to_json(const MembershipCertificate& c);

Json stage1_to_json(const Stage1Result& r);
Json stage2_to_json(const Stage2Result& r);
Json normalize_to_json(const std::vector<NormalizeItem>& items);
Json npp_witness_to_json(const NppWitness& w);
Json summable_extension_to_json(const SummableExtensionResult& r);
Json fin_to_exh_to_json(const FinToExhResult& r);
Json snpp_to_json(const SnppDecomposition& d);
Json partition_selection_to_json(const PartitionSelectionResult& r);
Json sign_selection_to_json(const SignSelectionResult& r);
Json katetov_to_json(const KatetovReport& r);
Json splitting_to_json(const SplittingReport& r);
Json dominance_to_json(const DominanceEvidence& d);
Json tukey_to_json(const TukeyDemoReport& r);

/// FNV-1a of the canonical dump, for self-contained reports.
std::string json_hash(const Json& j);

} // namespace idealab

#endif
