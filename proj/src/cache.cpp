// Versioned binary cache for CitationGraph.
//
// Layout: magic "DKG1" | u32 version | three length-prefixed sections
// (nodes, edges, stats) | u64 FNV-1a checksum of everything before it.
// Only the out-adjacency is stored; the in-adjacency is a deterministic
// transpose and is rebuilt on load.

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "disruptkit/graph.hpp"

namespace disruptkit {

namespace {

constexpr char kMagic[4] = {'D', 'K', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
  public:
    void u8(std::uint8_t v) { raw(&v, 1); }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void i32(std::int32_t v) { raw(&v, sizeof v); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void raw(const void* data, std::size_t len) {
        buf_.append(static_cast<const char*>(data), len);
    }
    const std::string& buffer() const { return buf_; }

  private:
    std::string buf_;
};

class Reader {
  public:
    Reader(const char* data, std::size_t len) : data_(data), len_(len) {}

    std::uint8_t u8() { return take<std::uint8_t>(); }
    std::uint32_t u32() { return take<std::uint32_t>(); }
    std::uint64_t u64() { return take<std::uint64_t>(); }
    std::int32_t i32() { return take<std::int32_t>(); }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s(data_ + pos_, n);
        pos_ += n;
        return s;
    }
    bool exhausted() const { return pos_ == len_; }

  private:
    template <typename T>
    T take() {
        need(sizeof(T));
        T v;
        std::memcpy(&v, data_ + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    void need(std::size_t n) const {
        if (pos_ + n > len_) throw DataError("graph cache truncated");
    }

    const char* data_;
    std::size_t len_;
    std::size_t pos_ = 0;
};

void write_optional_str(Writer& w, const std::optional<std::string>& v) {
    w.u8(v.has_value() ? 1 : 0);
    if (v) w.str(*v);
}

std::optional<std::string> read_optional_str(Reader& r) {
    if (r.u8() == 0) return std::nullopt;
    return r.str();
}

}  // namespace

void persist_graph(const CitationGraph& graph, std::ostream& sink) {
    Writer nodes;
    nodes.u64(graph.size());
    for (NodeIdx i = 0; i < graph.size(); ++i) {
        const PaperRecord& rec = graph.record(i);
        nodes.str(rec.id);
        nodes.u8(rec.year.has_value() ? 1 : 0);
        if (rec.year) nodes.i32(*rec.year);
        write_optional_str(nodes, rec.journal);
        write_optional_str(nodes, rec.discipline);
        nodes.u8(rec.elements.has_value() ? 1 : 0);
        if (rec.elements) {
            nodes.u32(static_cast<std::uint32_t>(rec.elements->size()));
            for (const auto& e : *rec.elements) nodes.str(e);
        }
        nodes.u8(rec.is_stub ? 1 : 0);
    }

    Writer edges;
    edges.u64(graph.size());
    edges.u64(graph.stats().edge_count);
    for (NodeIdx i = 0; i < graph.size(); ++i) {
        auto out = graph.out_edges(i);
        edges.u64(out.size());
        for (NodeIdx t : out) edges.u32(t);
    }

    Writer stats;
    stats.u64(graph.stats().node_count);
    stats.u64(graph.stats().edge_count);
    stats.u64(graph.stats().duplicate_edges);
    stats.u64(graph.stats().dropped_self_loops);
    stats.u64(graph.stats().stub_nodes);

    Writer file;
    file.raw(kMagic, sizeof kMagic);
    file.u32(kVersion);
    for (const Writer* section : {&nodes, &edges, &stats}) {
        file.u64(section->buffer().size());
        file.raw(section->buffer().data(), section->buffer().size());
    }
    Fnv1a64 hash;
    hash.update(file.buffer().data(), file.buffer().size());
    file.u64(hash.digest());

    sink.write(file.buffer().data(),
               static_cast<std::streamsize>(file.buffer().size()));
    if (!sink) throw DataError("failed to write graph cache");
}

CitationGraph load_cached(std::istream& source) {
    std::string bytes((std::istreambuf_iterator<char>(source)),
                      std::istreambuf_iterator<char>());
    if (bytes.size() < sizeof kMagic + sizeof(std::uint32_t) + sizeof(std::uint64_t))
        throw DataError("graph cache truncated");
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw DataError("graph cache version mismatch: bad magic bytes");

    std::uint64_t stored_checksum;
    std::memcpy(&stored_checksum, bytes.data() + bytes.size() - sizeof stored_checksum,
                sizeof stored_checksum);
    Fnv1a64 hash;
    hash.update(bytes.data(), bytes.size() - sizeof stored_checksum);
    if (hash.digest() != stored_checksum)
        throw DataError("graph cache checksum failure");

    Reader r(bytes.data(), bytes.size() - sizeof stored_checksum);
    for (int i = 0; i < 4; ++i) r.u8();  // magic, already verified
    std::uint32_t version = r.u32();
    if (version != kVersion)
        throw DataError("graph cache version mismatch: got version " +
                        std::to_string(version));

    std::uint64_t nodes_len = r.u64();
    (void)nodes_len;
    std::uint64_t count = r.u64();
    CitationGraph g;
    g.records_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        PaperRecord rec;
        rec.id = r.str();
        if (r.u8()) rec.year = r.i32();
        rec.journal = read_optional_str(r);
        rec.discipline = read_optional_str(r);
        if (r.u8()) {
            std::uint32_t n = r.u32();
            std::vector<std::string> elems;
            elems.reserve(n);
            for (std::uint32_t k = 0; k < n; ++k) elems.push_back(r.str());
            rec.elements = std::move(elems);
        }
        rec.is_stub = r.u8() != 0;
        g.records_.push_back(std::move(rec));
    }

    std::uint64_t edges_len = r.u64();
    (void)edges_len;
    std::uint64_t n_nodes = r.u64();
    if (n_nodes != count) throw DataError("graph cache section mismatch");
    std::uint64_t n_edges = r.u64();
    g.out_offsets_.assign(n_nodes + 1, 0);
    g.out_targets_.reserve(n_edges);
    for (std::uint64_t i = 0; i < n_nodes; ++i) {
        std::uint64_t deg = r.u64();
        g.out_offsets_[i + 1] = g.out_offsets_[i] + deg;
        for (std::uint64_t k = 0; k < deg; ++k) {
            NodeIdx t = r.u32();
            if (t >= n_nodes) throw DataError("graph cache has out-of-range edge");
            g.out_targets_.push_back(t);
        }
    }
    if (g.out_targets_.size() != n_edges)
        throw DataError("graph cache section mismatch");

    // Rebuild the transpose.
    g.in_offsets_.assign(n_nodes + 1, 0);
    for (NodeIdx t : g.out_targets_) ++g.in_offsets_[t + 1];
    for (std::uint64_t i = 0; i < n_nodes; ++i) g.in_offsets_[i + 1] += g.in_offsets_[i];
    g.in_targets_.resize(g.out_targets_.size());
    std::vector<std::uint64_t> cur(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (std::uint64_t s = 0; s < n_nodes; ++s)
        for (std::uint64_t k = g.out_offsets_[s]; k < g.out_offsets_[s + 1]; ++k)
            g.in_targets_[cur[g.out_targets_[k]]++] = static_cast<NodeIdx>(s);
    for (std::uint64_t i = 0; i < n_nodes; ++i)
        std::sort(g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[i]),
                  g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[i + 1]));

    std::uint64_t stats_len = r.u64();
    (void)stats_len;
    g.stats_.node_count = r.u64();
    g.stats_.edge_count = r.u64();
    g.stats_.duplicate_edges = r.u64();
    g.stats_.dropped_self_loops = r.u64();
    g.stats_.stub_nodes = r.u64();
    if (!r.exhausted()) throw DataError("graph cache has trailing bytes");
    return g;
}

}  // namespace disruptkit
