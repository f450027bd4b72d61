#pragma once
// Immutable citation graph: ingest, validation, binary cache, windowed queries.
//
// Node order is ascending by paper id, and both adjacency directions are CSR
// arrays sorted the same way, so every iteration over the graph is
// deterministic regardless of input order or worker count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disruptkit/errors.hpp"

namespace disruptkit {

using NodeIdx = std::uint32_t;
inline constexpr NodeIdx kInvalidNode = static_cast<NodeIdx>(-1);

inline constexpr int kMinYear = 1500;
inline constexpr int kMaxYear = 2100;

struct Window {
    enum class Mode { relative, absolute, unbounded };
    Mode mode = Mode::unbounded;
    int value = 0;  // years after the focal year, or the cutoff year

    static Window relative(int years);
    static Window absolute(int cutoff_year);
    static Window unbounded() { return Window{}; }

    // A citer with year `y` passes a relative window t for origin year y0 iff
    // y <= y0 + t (publication year inclusive); an absolute window c iff
    // y <= c. Absent years pass only unbounded windows.
    bool passes(std::optional<int> citer_year, std::optional<int> origin_year) const;

    std::string to_string() const;
    // "unbounded", "3" (relative years) or "abs:2010" (cutoff year).
    static Window parse(std::string_view text);

    bool operator==(const Window&) const = default;
};

struct PaperRecord {
    std::string id;
    std::optional<int> year;
    std::optional<std::string> journal;
    std::optional<std::string> discipline;
    std::optional<std::vector<std::string>> elements;  // sorted, deduplicated
    bool is_stub = false;  // endpoint seen only in the edge file

    bool operator==(const PaperRecord&) const = default;
};

struct GraphStats {
    std::uint64_t node_count = 0;
    std::uint64_t edge_count = 0;          // unique edges, self-loops removed
    std::uint64_t duplicate_edges = 0;     // collapsed multi-edges
    std::uint64_t dropped_self_loops = 0;
    std::uint64_t stub_nodes = 0;

    bool operator==(const GraphStats&) const = default;
};

struct IngestOptions {
    bool normalize_elements = true;  // trim + lowercase knowledge elements
};

class CitationGraph {
  public:
    CitationGraph() = default;

    // Applies the full ingest policy (dedup, self-loop drop, stub creation)
    // to already-decoded records. Node-file loading funnels through here.
    static CitationGraph from_data(std::vector<PaperRecord> records,
                                   std::vector<std::pair<std::string, std::string>> edges);

    std::size_t size() const { return records_.size(); }
    const PaperRecord& record(NodeIdx node) const { return records_[node]; }
    std::optional<NodeIdx> find(std::string_view id) const;
    NodeIdx require(std::string_view id) const;  // throws DataError when absent

    std::span<const NodeIdx> out_edges(NodeIdx node) const;
    std::span<const NodeIdx> in_edges(NodeIdx node) const;
    const GraphStats& stats() const { return stats_; }

    bool passes_window(NodeIdx citer, const Window& window,
                       std::optional<int> origin_year) const;

    // Distinct citers of `paper` passing the window. Relative windows resolve
    // against origin_year and require it.
    std::uint64_t citation_count(NodeIdx paper, const Window& window,
                                 std::optional<int> origin_year) const;
    std::uint64_t citation_count(std::string_view paper, const Window& window,
                                 std::optional<int> origin_year) const;

    bool operator==(const CitationGraph&) const = default;

  private:
    friend CitationGraph load_cached(std::istream&);

    std::vector<PaperRecord> records_;  // ascending by id
    std::vector<std::uint64_t> out_offsets_, in_offsets_;
    std::vector<NodeIdx> out_targets_, in_targets_;
    GraphStats stats_;
};

// Node file: JSON lines {"id","year","journal","discipline","elements"}.
// Edge file: CSV with header `citing_id,cited_id`.
// Malformed lines abort with the 1-based line number.
CitationGraph load_graph(std::istream& nodes_source, std::istream& edges_source,
                         const IngestOptions& options = {});

// Versioned binary cache: magic "DKG1", length-prefixed sections, trailing
// FNV-1a checksum. Round-trips field-for-field.
void persist_graph(const CitationGraph& graph, std::ostream& sink);
CitationGraph load_cached(std::istream& source);

// Incremental FNV-1a 64; used for the cache checksum and manifest digests.
struct Fnv1a64 {
    std::uint64_t state = 1469598103934665603ULL;
    void update(const void* data, std::size_t len);
    std::uint64_t digest() const { return state; }
};

std::string normalize_element(std::string_view raw);
std::string trim(std::string_view text);

}  // namespace disruptkit
