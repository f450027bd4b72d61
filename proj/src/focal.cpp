#include "disruptkit/focal.hpp"

#include <algorithm>
#include <unordered_set>

namespace disruptkit {

namespace {

bool contains_sorted(const std::vector<NodeIdx>& sorted, NodeIdx v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<NodeIdx> intersect_sorted(std::span<const NodeIdx> a,
                                      const std::vector<NodeIdx>& b) {
    std::vector<NodeIdx> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

std::uint64_t union_size(const std::vector<std::vector<NodeIdx>>& sets) {
    std::vector<NodeIdx> all;
    std::size_t total = 0;
    for (const auto& s : sets) total += s.size();
    all.reserve(total);
    for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all.size();
}

void add_flag(std::vector<std::string>& flags, const char* code) {
    if (std::find(flags.begin(), flags.end(), code) == flags.end())
        flags.emplace_back(code);
}

}  // namespace

std::uint64_t FocalNetwork::n_f() const {
    std::uint64_t n = 0;
    for (const auto& c : citers)
        if (c.coupled.empty()) ++n;
    return n;
}

std::uint64_t FocalNetwork::n_b() const { return citers.size() - n_f(); }

std::uint64_t FocalNetwork::t_r() const {
    std::uint64_t n = 0;
    for (const auto& c : citers) n += c.coupled.size();
    return n;
}

bool FocalNetwork::zero_reference() const {
    return std::find(flags.begin(), flags.end(), flag::zero_reference_artifact) !=
           flags.end();
}

ReferencePool own_references_pool(const CitationGraph& graph, NodeIdx fp) {
    auto out = graph.out_edges(fp);
    ReferencePool pool;
    pool.refs.assign(out.begin(), out.end());
    pool.provenance = PoolProvenance::own_references;
    return pool;
}

ReferencePool build_field_pool(const CitationGraph& graph, NodeIdx fp) {
    const PaperRecord& rec = graph.record(fp);
    if (!rec.journal || !rec.year)
        throw DataError("field pool requires journal and year for paper " + rec.id);
    ReferencePool pool;
    pool.provenance = PoolProvenance::field_pool;
    pool.field_journal = rec.journal;
    pool.field_year = rec.year;
    for (NodeIdx p = 0; p < graph.size(); ++p) {
        const PaperRecord& other = graph.record(p);
        if (other.journal == rec.journal && other.year == rec.year) {
            auto out = graph.out_edges(p);
            pool.refs.insert(pool.refs.end(), out.begin(), out.end());
        }
    }
    std::sort(pool.refs.begin(), pool.refs.end());
    pool.refs.erase(std::unique(pool.refs.begin(), pool.refs.end()), pool.refs.end());
    return pool;
}

FocalNetwork extract_focal_network(const CitationGraph& graph, NodeIdx fp,
                                   const Window& window, const ReferencePool& pool) {
    if (fp >= graph.size()) throw DataError("focal paper index out of range");
    const PaperRecord& rec = graph.record(fp);
    if (window.mode == Window::Mode::relative && !rec.year)
        throw DataError("paper " + rec.id + " has no year; relative window undefined");

    FocalNetwork net;
    net.fp = fp;
    net.fp_year = rec.year;
    net.window = window;
    net.pool = pool;
    if (pool.refs.empty()) add_flag(net.flags, flag::zero_reference_artifact);

    bool saw_yearless = false;
    std::vector<NodeIdx> citer_set;
    for (NodeIdx citer : graph.in_edges(fp)) {
        if (!graph.record(citer).year && window.mode != Window::Mode::unbounded) {
            saw_yearless = true;
            continue;
        }
        if (graph.passes_window(citer, window, rec.year)) citer_set.push_back(citer);
    }
    net.citers.reserve(citer_set.size());
    for (NodeIdx citer : citer_set)
        net.citers.push_back({citer, intersect_sorted(graph.out_edges(citer), pool.refs)});

    net.ext_citers.resize(pool.refs.size());
    net.ref_counts.resize(pool.refs.size());
    for (std::size_t i = 0; i < pool.refs.size(); ++i) {
        NodeIdx ref = pool.refs[i];
        std::uint64_t count = 0;
        auto& ext = net.ext_citers[i];
        for (NodeIdx citer : graph.in_edges(ref)) {
            if (!graph.record(citer).year && window.mode != Window::Mode::unbounded) {
                saw_yearless = true;
                continue;
            }
            if (!graph.passes_window(citer, window, rec.year)) continue;
            ++count;
            if (citer == fp || contains_sorted(citer_set, citer)) continue;
            ext.push_back(citer);
        }
        net.ref_counts[i] = count;
    }
    net.n_r_ = union_size(net.ext_citers);
    if (saw_yearless) add_flag(net.flags, flag::yearless_citers_excluded);
    return net;
}

std::vector<PriorArtNetwork> extract_prior_art_networks(const FocalNetwork& net) {
    std::vector<PriorArtNetwork> out;
    out.reserve(net.pool.refs.size());
    for (std::size_t i = 0; i < net.pool.refs.size(); ++i) {
        PriorArtNetwork p;
        p.prior = net.pool.refs[i];
        for (const auto& c : net.citers)
            if (contains_sorted(c.coupled, p.prior))
                ++p.n_b_i;
        p.n_f_i = net.citers.size() - p.n_b_i;
        p.n_p_i = net.ext_citers[i].size();
        out.push_back(p);
    }
    return out;
}

std::vector<PriorArtNetwork> extract_prior_art_networks(const CitationGraph& graph,
                                                        NodeIdx fp,
                                                        const Window& window) {
    ReferencePool pool = own_references_pool(graph, fp);
    if (pool.refs.empty())
        throw DataError("paper " + graph.record(fp).id +
                        " has no references; prior-art networks not computable");
    return extract_prior_art_networks(extract_focal_network(graph, fp, window, pool));
}

FocalNetwork restrict_pool(const FocalNetwork& net, const std::vector<NodeIdx>& kept) {
    FocalNetwork out;
    out.fp = net.fp;
    out.fp_year = net.fp_year;
    out.window = net.window;
    out.flags = net.flags;
    out.pool.provenance = PoolProvenance::restricted;
    out.pool.refs = kept;

    out.citers.reserve(net.citers.size());
    for (const auto& c : net.citers) {
        CiterLink link{c.citer, {}};
        std::set_intersection(c.coupled.begin(), c.coupled.end(), kept.begin(),
                              kept.end(), std::back_inserter(link.coupled));
        out.citers.push_back(std::move(link));
    }

    out.ext_citers.reserve(kept.size());
    out.ref_counts.reserve(kept.size());
    for (NodeIdx ref : kept) {
        auto it = std::lower_bound(net.pool.refs.begin(), net.pool.refs.end(), ref);
        if (it == net.pool.refs.end() || *it != ref)
            throw DataError("restrict_pool: reference not in the parent pool");
        std::size_t i = static_cast<std::size_t>(it - net.pool.refs.begin());
        out.ext_citers.push_back(net.ext_citers[i]);
        out.ref_counts.push_back(net.ref_counts[i]);
    }
    out.n_r_ = union_size(out.ext_citers);
    if (kept.empty()) add_flag(out.flags, flag::zero_reference_artifact);
    return out;
}

FocalNetwork filter_citers_min_coupling(const FocalNetwork& net, int l) {
    FocalNetwork out = net;
    out.citers.clear();
    for (const auto& c : net.citers)
        if (c.coupled.size() >= static_cast<std::size_t>(l)) out.citers.push_back(c);
    return out;
}

std::vector<std::string> transform_elements(const std::vector<std::string>& elements,
                                            ElementMode mode) {
    if (mode == ElementMode::entity) return elements;
    std::vector<std::string> pairs;
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            pairs.push_back(elements[i] + '\x1f' + elements[j]);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

EntityNetwork extract_entity_network(const CitationGraph& graph,
                                     const FocalNetwork& net, ElementMode mode) {
    const PaperRecord& rec = graph.record(net.fp);
    if (!rec.elements || rec.elements->empty())
        throw DataError("paper " + rec.id + " has no knowledge elements");

    EntityNetwork enet;
    enet.fp = net.fp;
    enet.mode = mode;
    enet.flags = net.flags;
    enet.fp_elements = transform_elements(*rec.elements, mode);
    if (mode == ElementMode::relation && rec.elements->size() == 1)
        add_flag(enet.flags, flag::relation_singletons);

    bool refs_missing = false;
    std::vector<std::string> ref_union;
    for (NodeIdx ref : net.pool.refs) {
        const auto& relems = graph.record(ref).elements;
        if (!relems || relems->empty()) {
            refs_missing = true;
            continue;
        }
        if (mode == ElementMode::relation && relems->size() == 1)
            add_flag(enet.flags, flag::relation_singletons);
        auto transformed = transform_elements(*relems, mode);
        ref_union.insert(ref_union.end(), transformed.begin(), transformed.end());
    }
    std::sort(ref_union.begin(), ref_union.end());
    ref_union.erase(std::unique(ref_union.begin(), ref_union.end()), ref_union.end());
    enet.ref_elements = std::move(ref_union);
    if (refs_missing) add_flag(enet.flags, flag::refs_without_elements);
    if (enet.ref_elements.empty()) add_flag(enet.flags, flag::empty_ref_elements);

    auto in_fp = [&](const std::string& e) {
        return std::binary_search(enet.fp_elements.begin(), enet.fp_elements.end(), e);
    };
    auto in_refs = [&](const std::string& e) {
        return std::binary_search(enet.ref_elements.begin(), enet.ref_elements.end(), e);
    };
    enet.n_rf = 0;
    for (const auto& e : enet.fp_elements)
        if (!in_refs(e)) ++enet.n_rf;
    enet.n_rb = enet.fp_elements.size() - enet.n_rf;

    bool citers_missing = false;
    for (const auto& link : net.citers) {
        const auto& celems = graph.record(link.citer).elements;
        if (!celems || celems->empty()) {
            citers_missing = true;
            continue;
        }
        if (mode == ElementMode::relation && celems->size() == 1)
            add_flag(enet.flags, flag::relation_singletons);
        CiterElementPartition part;
        part.citer = link.citer;
        bool shares = false;
        for (const auto& e : transform_elements(*celems, mode)) {
            bool f = in_fp(e), r = in_refs(e);
            if (f && !r) ++part.n_cf;
            else if (f && r) ++part.n_ca;
            else if (!f && r) ++part.n_cr;
            else ++part.n_cc;
            if (f) shares = true;
        }
        if (shares) ++enet.n_s;
        enet.citer_partitions.push_back(part);
    }
    enet.n_citers = enet.citer_partitions.size();
    if (citers_missing) add_flag(enet.flags, flag::citers_without_elements);
    return enet;
}

EntityNetwork extract_entity_network(const CitationGraph& graph, NodeIdx fp,
                                     const Window& window, ElementMode mode) {
    FocalNetwork net =
        extract_focal_network(graph, fp, window, own_references_pool(graph, fp));
    return extract_entity_network(graph, net, mode);
}

}  // namespace disruptkit
