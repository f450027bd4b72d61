#pragma once
// Brute-force reference scoring and a seeded synthetic-corpus generator.
//
// naive_score recomputes every set in the indicator definitions by literal
// loops over a raw edge list. It deliberately shares no extraction or
// set-intersection code with the optimized modules; agreement between the two
// paths is what the property suites check.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "disruptkit/indicators.hpp"

namespace disruptkit {
namespace oracle {

struct RawEdgeList {
    std::vector<std::pair<std::string, std::string>> edges;  // (citing, cited)
    std::map<std::string, std::optional<int>> years;
    std::map<std::string, std::vector<std::string>> elements;
    std::map<std::string, std::string> journals;

    std::vector<std::string> all_papers() const;
};

struct NaiveResult {
    std::optional<Rational> value;
    std::vector<std::string> warnings;
    bool computable() const { return value.has_value(); }
};

// Recomputes the configured indicator from first principles. Instances are
// expected to stay small (the loops are O(V*E) and worse).
NaiveResult naive_score(const RawEdgeList& raw, const std::string& fp,
                        const IndicatorConfig& config);

// Time-respecting random corpus: a paper may cite same-or-earlier years only
// (and among same-year papers only earlier ids, so no citation cycles exist).
// Identical seeds produce identical corpora. element_vocab = 0 disables
// knowledge elements.
RawEdgeList random_graph(std::uint64_t seed, std::uint32_t n_papers, double avg_refs,
                         std::pair<int, int> year_span, std::uint32_t element_vocab);

// Materializes the raw list through the production ingest policy.
CitationGraph to_graph(const RawEdgeList& raw);

// Serializes the raw list in the external ingest formats.
std::string to_node_jsonl(const RawEdgeList& raw);
std::string to_edge_csv(const RawEdgeList& raw);

}  // namespace oracle
}  // namespace disruptkit
