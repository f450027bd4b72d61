#pragma once
// Windowed tripartite neighborhood extraction for one focal paper.
//
// A FocalNetwork holds everything the indicator formulas consume: the
// reference pool, the citers with their bibliographic-coupling links, the
// per-reference external citer sets (group R), and the windowed citation
// count of each reference. All member lists are ascending by node index,
// which is ascending by paper id.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disruptkit/graph.hpp"

namespace disruptkit {

// Warning / flag codes shared across extraction and scoring.
namespace flag {
inline constexpr const char* zero_reference_artifact = "zero_reference_artifact";
inline constexpr const char* all_refs_excluded = "all_refs_excluded";
inline constexpr const char* l_semantics_coerced = "l_semantics_coerced";
inline constexpr const char* degenerate_cohort = "degenerate_cohort";
inline constexpr const char* skipped_priors = "skipped_priors";
inline constexpr const char* yearless_citers_excluded = "yearless_citers_excluded";
inline constexpr const char* citers_without_elements = "citers_without_elements";
inline constexpr const char* refs_without_elements = "refs_without_elements";
inline constexpr const char* empty_ref_elements = "empty_ref_elements";
inline constexpr const char* relation_singletons = "relation_singletons";
inline constexpr const char* zero_partition_citers_skipped = "zero_partition_citers_skipped";
inline constexpr const char* missing_focal_year = "missing_focal_year";
inline constexpr const char* missing_focal_elements = "missing_focal_elements";
inline constexpr const char* missing_journal_or_year = "missing_journal_or_year";
inline constexpr const char* missing_cohort_year = "missing_cohort_year";
inline constexpr const char* empty_denominator = "empty_denominator";
inline constexpr const char* no_priors_retained = "no_priors_retained";
}  // namespace flag

enum class PoolProvenance { own_references, field_pool, restricted };

struct ReferencePool {
    std::vector<NodeIdx> refs;  // ascending
    PoolProvenance provenance = PoolProvenance::own_references;
    std::optional<std::string> field_journal;
    std::optional<int> field_year;
};

struct CiterLink {
    NodeIdx citer;
    std::vector<NodeIdx> coupled;  // references of the pool this citer also cites
};

struct FocalNetwork {
    NodeIdx fp = kInvalidNode;
    std::optional<int> fp_year;
    Window window;
    ReferencePool pool;
    std::vector<CiterLink> citers;               // windowed citers of fp
    std::vector<std::vector<NodeIdx>> ext_citers;  // per pool ref: cite ref, not fp
    std::vector<std::uint64_t> ref_counts;       // per pool ref: windowed citations
    std::vector<std::string> flags;

    std::uint64_t c() const { return citers.size(); }
    std::uint64_t r() const { return pool.refs.size(); }
    std::uint64_t n_f() const;
    std::uint64_t n_b() const;
    std::uint64_t t_r() const;
    std::uint64_t n_r() const { return n_r_; }

    bool zero_reference() const;

  private:
    friend FocalNetwork extract_focal_network(const CitationGraph&, NodeIdx,
                                              const Window&, const ReferencePool&);
    friend FocalNetwork restrict_pool(const FocalNetwork&,
                                      const std::vector<NodeIdx>&);
    friend FocalNetwork filter_citers_min_coupling(const FocalNetwork&, int);
    std::uint64_t n_r_ = 0;  // |union of ext_citers|, cached at build time
};

struct PriorArtNetwork {
    NodeIdx prior = kInvalidNode;
    std::uint64_t n_f_i = 0;  // citers of fp not citing the prior
    std::uint64_t n_b_i = 0;  // citers of fp also citing the prior
    std::uint64_t n_p_i = 0;  // papers citing the prior but not fp
};

ReferencePool own_references_pool(const CitationGraph& graph, NodeIdx fp);

// Union of the out-edges of every paper sharing the focal paper's journal and
// year (the focal paper included). Throws when journal or year is absent.
ReferencePool build_field_pool(const CitationGraph& graph, NodeIdx fp);

// Throws on unknown fp or on a relative window without a focal year. An empty
// pool yields a network flagged `zero_reference_artifact`, never a score.
FocalNetwork extract_focal_network(const CitationGraph& graph, NodeIdx fp,
                                   const Window& window, const ReferencePool& pool);

// One network per pool reference, in pool order; equals extract_focal_network
// restricted to the single-reference pool {p_i}.
std::vector<PriorArtNetwork> extract_prior_art_networks(const FocalNetwork& net);
std::vector<PriorArtNetwork> extract_prior_art_networks(const CitationGraph& graph,
                                                        NodeIdx fp,
                                                        const Window& window);

// Pool subset (kept ascending): coupling links and the group-R union are
// recomputed against the reduced pool. Citers never change.
FocalNetwork restrict_pool(const FocalNetwork& net, const std::vector<NodeIdx>& kept);

// Keeps only citers with at least `l` coupling links (the citer-filter
// coercion for bases without an F/B reclassification).
FocalNetwork filter_citers_min_coupling(const FocalNetwork& net, int l);

// --- knowledge-element networks ---------------------------------------------

enum class ElementMode { entity, relation };

struct CiterElementPartition {
    NodeIdx citer;
    std::uint64_t n_cf = 0;  // only in fp
    std::uint64_t n_ca = 0;  // in fp and in refs
    std::uint64_t n_cr = 0;  // only in refs
    std::uint64_t n_cc = 0;  // in neither
    std::uint64_t total() const { return n_cf + n_ca + n_cr + n_cc; }
};

struct EntityNetwork {
    NodeIdx fp = kInvalidNode;
    ElementMode mode = ElementMode::entity;
    std::vector<std::string> fp_elements;   // mode-transformed, sorted
    std::vector<std::string> ref_elements;  // union over pool refs, sorted
    std::uint64_t n_rf = 0;                 // |fp_elements \ ref_elements|
    std::uint64_t n_rb = 0;                 // |fp_elements ∩ ref_elements|
    std::vector<CiterElementPartition> citer_partitions;  // element-bearing citers
    std::uint64_t n_citers = 0;             // = citer_partitions.size()
    std::uint64_t n_s = 0;  // citers sharing >= 1 element with fp
    std::vector<std::string> flags;
};

// Mode transform: entity keeps the element set; relation replaces it with all
// unordered within-paper pairs (single-element sets become empty).
std::vector<std::string> transform_elements(const std::vector<std::string>& elements,
                                            ElementMode mode);

// Partitions the neighborhood of `net` (its pool and citers) by knowledge
// element. Throws when fp has no elements recorded.
EntityNetwork extract_entity_network(const CitationGraph& graph,
                                     const FocalNetwork& net, ElementMode mode);
EntityNetwork extract_entity_network(const CitationGraph& graph, NodeIdx fp,
                                     const Window& window, ElementMode mode);

}  // namespace disruptkit
