#include "disruptkit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <json.hpp>
#include <unordered_map>

namespace disruptkit {

namespace {

bool has_outer_whitespace(std::string_view s) {
    if (s.empty()) return false;
    return std::isspace(static_cast<unsigned char>(s.front())) ||
           std::isspace(static_cast<unsigned char>(s.back()));
}

void check_id(const std::string& id, const char* what, std::size_t line_no) {
    if (id.empty())
        throw DataError(std::string(what) + " has empty id (line " +
                        std::to_string(line_no) + ")");
    if (has_outer_whitespace(id))
        throw DataError(std::string(what) + " id has leading/trailing whitespace: '" +
                        id + "' (line " + std::to_string(line_no) + ")");
}

void check_year(int year, std::size_t line_no) {
    if (year < kMinYear || year > kMaxYear)
        throw DataError("year " + std::to_string(year) + " outside [" +
                        std::to_string(kMinYear) + "," + std::to_string(kMaxYear) +
                        "] (line " + std::to_string(line_no) + ")");
}

}  // namespace

std::string trim(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

std::string normalize_element(std::string_view raw) {
    std::string s = trim(raw);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Window Window::relative(int years) {
    if (years < 1) throw UsageError("relative window must be >= 1 year");
    return Window{Mode::relative, years};
}

Window Window::absolute(int cutoff_year) {
    if (cutoff_year < kMinYear || cutoff_year > kMaxYear)
        throw UsageError("absolute window cutoff outside year bounds");
    return Window{Mode::absolute, cutoff_year};
}

bool Window::passes(std::optional<int> citer_year, std::optional<int> origin_year) const {
    switch (mode) {
        case Mode::unbounded:
            return true;
        case Mode::absolute:
            return citer_year.has_value() && *citer_year <= value;
        case Mode::relative:
            if (!origin_year)
                throw DataError("relative window requires an origin year");
            return citer_year.has_value() && *citer_year <= *origin_year + value;
    }
    return false;
}

std::string Window::to_string() const {
    switch (mode) {
        case Mode::unbounded: return "unbounded";
        case Mode::relative: return std::to_string(value);
        case Mode::absolute: return "abs:" + std::to_string(value);
    }
    return "unbounded";
}

Window Window::parse(std::string_view text) {
    if (text == "unbounded") return unbounded();
    if (text.rfind("abs:", 0) == 0) {
        int year = 0;
        auto tail = text.substr(4);
        auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), year);
        if (ec != std::errc{} || p != tail.data() + tail.size())
            throw UsageError("bad window spec: " + std::string(text));
        return absolute(year);
    }
    int years = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), years);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw UsageError("bad window spec: " + std::string(text));
    return relative(years);
}

CitationGraph CitationGraph::from_data(
    std::vector<PaperRecord> records,
    std::vector<std::pair<std::string, std::string>> edges) {
    CitationGraph g;

    // Merge duplicate node lines; identical duplicates are fine, conflicting
    // metadata is a data error.
    std::sort(records.begin(), records.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        if (records[i].id == records[i + 1].id) {
            if (records[i] != records[i + 1])
                throw DataError("duplicate node id with conflicting metadata: " +
                                records[i].id);
            records.erase(records.begin() + static_cast<std::ptrdiff_t>(i + 1));
            --i;
        }
    }

    // Stub records for edge endpoints absent from the node file.
    std::vector<std::string> endpoints;
    endpoints.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        endpoints.push_back(a);
        endpoints.push_back(b);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    for (const auto& id : endpoints) {
        auto it = std::lower_bound(records.begin(), records.end(), id,
                                   [](const PaperRecord& r, const std::string& key) {
                                       return r.id < key;
                                   });
        if (it == records.end() || it->id != id) {
            PaperRecord stub;
            stub.id = id;
            stub.is_stub = true;
            records.insert(it, std::move(stub));
            ++g.stats_.stub_nodes;
        }
    }

    g.records_ = std::move(records);
    g.stats_.node_count = g.records_.size();

    std::unordered_map<std::string_view, NodeIdx> index;
    index.reserve(g.records_.size());
    for (NodeIdx i = 0; i < g.records_.size(); ++i) index.emplace(g.records_[i].id, i);

    std::vector<std::pair<NodeIdx, NodeIdx>> pairs;
    pairs.reserve(edges.size());
    for (const auto& [citing, cited] : edges) {
        if (citing == cited) {
            ++g.stats_.dropped_self_loops;
            continue;
        }
        pairs.emplace_back(index.at(citing), index.at(cited));
    }
    std::sort(pairs.begin(), pairs.end());
    auto last = std::unique(pairs.begin(), pairs.end());
    g.stats_.duplicate_edges = static_cast<std::uint64_t>(pairs.end() - last);
    pairs.erase(last, pairs.end());
    g.stats_.edge_count = pairs.size();

    const std::size_t n = g.records_.size();
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& [s, t] : pairs) {
        ++g.out_offsets_[s + 1];
        ++g.in_offsets_[t + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_offsets_[i + 1] += g.out_offsets_[i];
        g.in_offsets_[i + 1] += g.in_offsets_[i];
    }
    g.out_targets_.resize(pairs.size());
    g.in_targets_.resize(pairs.size());
    std::vector<std::uint64_t> ocur(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (const auto& [s, t] : pairs) g.out_targets_[ocur[s]++] = t;
    std::vector<std::uint64_t> icur(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const auto& [s, t] : pairs) g.in_targets_[icur[t]++] = s;
    // pairs were sorted by (source, target); per-node in-lists need their own
    // ascending order.
    for (std::size_t i = 0; i < n; ++i)
        std::sort(g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[i]),
                  g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[i + 1]));
    return g;
}

std::optional<NodeIdx> CitationGraph::find(std::string_view id) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), id,
                               [](const PaperRecord& r, std::string_view key) {
                                   return r.id < key;
                               });
    if (it == records_.end() || it->id != id) return std::nullopt;
    return static_cast<NodeIdx>(it - records_.begin());
}

NodeIdx CitationGraph::require(std::string_view id) const {
    auto idx = find(id);
    if (!idx) throw DataError("unknown paper id: " + std::string(id));
    return *idx;
}

std::span<const NodeIdx> CitationGraph::out_edges(NodeIdx node) const {
    return {out_targets_.data() + out_offsets_[node],
            out_targets_.data() + out_offsets_[node + 1]};
}

std::span<const NodeIdx> CitationGraph::in_edges(NodeIdx node) const {
    return {in_targets_.data() + in_offsets_[node],
            in_targets_.data() + in_offsets_[node + 1]};
}

bool CitationGraph::passes_window(NodeIdx citer, const Window& window,
                                  std::optional<int> origin_year) const {
    return window.passes(records_[citer].year, origin_year);
}

std::uint64_t CitationGraph::citation_count(NodeIdx paper, const Window& window,
                                            std::optional<int> origin_year) const {
    if (window.mode == Window::Mode::relative && !origin_year)
        throw DataError("relative window requires an origin year");
    std::uint64_t count = 0;
    for (NodeIdx citer : in_edges(paper))
        if (passes_window(citer, window, origin_year)) ++count;
    return count;
}

std::uint64_t CitationGraph::citation_count(std::string_view paper, const Window& window,
                                            std::optional<int> origin_year) const {
    return citation_count(require(paper), window, origin_year);
}

CitationGraph load_graph(std::istream& nodes_source, std::istream& edges_source,
                         const IngestOptions& options) {
    std::vector<PaperRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(nodes_source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError("malformed node line " + std::to_string(line_no) + ": " +
                            e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string())
            throw DataError("malformed node line " + std::to_string(line_no) +
                            ": missing string id");
        PaperRecord rec;
        rec.id = obj["id"].get<std::string>();
        check_id(rec.id, "node", line_no);
        if (obj.contains("year") && !obj["year"].is_null()) {
            if (!obj["year"].is_number_integer())
                throw DataError("malformed node line " + std::to_string(line_no) +
                                ": year must be an integer or null");
            rec.year = obj["year"].get<int>();
            check_year(*rec.year, line_no);
        }
        if (obj.contains("journal") && !obj["journal"].is_null())
            rec.journal = trim(obj["journal"].get<std::string>());
        if (obj.contains("discipline") && !obj["discipline"].is_null())
            rec.discipline = trim(obj["discipline"].get<std::string>());
        if (obj.contains("elements") && !obj["elements"].is_null()) {
            if (!obj["elements"].is_array())
                throw DataError("malformed node line " + std::to_string(line_no) +
                                ": elements must be an array or null");
            std::vector<std::string> elems;
            for (const auto& e : obj["elements"]) {
                std::string v = options.normalize_elements
                                    ? normalize_element(e.get<std::string>())
                                    : e.get<std::string>();
                if (!v.empty()) elems.push_back(std::move(v));
            }
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
            rec.elements = std::move(elems);
        }
        records.push_back(std::move(rec));
    }

    std::vector<std::pair<std::string, std::string>> edges;
    line_no = 0;
    bool header_seen = false;
    while (std::getline(edges_source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_seen) {
            if (trim(line) != "citing_id,cited_id")
                throw DataError("edge file line 1: expected header citing_id,cited_id");
            header_seen = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw DataError("malformed edge line " + std::to_string(line_no) +
                            ": expected exactly two comma-separated fields");
        std::string citing = line.substr(0, comma);
        std::string cited = line.substr(comma + 1);
        check_id(citing, "edge citing", line_no);
        check_id(cited, "edge cited", line_no);
        edges.emplace_back(std::move(citing), std::move(cited));
    }
    if (!header_seen && !edges.empty())
        throw DataError("edge file is missing the citing_id,cited_id header");

    return CitationGraph::from_data(std::move(records), std::move(edges));
}

void Fnv1a64::update(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        state ^= bytes[i];
        state *= 1099511628211ULL;
    }
}

}  // namespace disruptkit
