#pragma once
// Shared builders for the test corpora.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disruptkit/graph.hpp"

namespace dktest {

struct NodeSpec {
    std::string id;
    std::optional<int> year;
    std::optional<std::string> journal;
    std::optional<std::vector<std::string>> elements;
};

inline disruptkit::CitationGraph make_graph(
    const std::vector<NodeSpec>& nodes,
    std::vector<std::pair<std::string, std::string>> edges) {
    std::vector<disruptkit::PaperRecord> records;
    records.reserve(nodes.size());
    for (const auto& n : nodes) {
        disruptkit::PaperRecord rec;
        rec.id = n.id;
        rec.year = n.year;
        rec.journal = n.journal;
        if (n.elements) {
            auto elems = *n.elements;
            std::sort(elems.begin(), elems.end());
            rec.elements = std::move(elems);
        }
        records.push_back(std::move(rec));
    }
    return disruptkit::CitationGraph::from_data(std::move(records), std::move(edges));
}

// fp "FP" (2000) citing one reference "R1" (1999); n_f citers of fp only,
// n_b citers of both, n_r papers citing only the reference. Citers in 2001.
inline disruptkit::CitationGraph counts_graph(int n_f, int n_b, int n_r) {
    std::vector<NodeSpec> nodes{{"FP", 2000, {}, {}}, {"R1", 1999, {}, {}}};
    std::vector<std::pair<std::string, std::string>> edges{{"FP", "R1"}};
    char buf[16];
    for (int i = 0; i < n_f; ++i) {
        std::snprintf(buf, sizeof buf, "F%03d", i);
        nodes.push_back({buf, 2001, {}, {}});
        edges.emplace_back(buf, "FP");
    }
    for (int i = 0; i < n_b; ++i) {
        std::snprintf(buf, sizeof buf, "B%03d", i);
        nodes.push_back({buf, 2001, {}, {}});
        edges.emplace_back(buf, "FP");
        edges.emplace_back(buf, "R1");
    }
    for (int i = 0; i < n_r; ++i) {
        std::snprintf(buf, sizeof buf, "X%03d", i);
        nodes.push_back({buf, 2001, {}, {}});
        edges.emplace_back(buf, "R1");
    }
    return make_graph(nodes, std::move(edges));
}

// The six-node neighborhood used across the extraction examples:
// fp P0 (2000) cites r1, r2; c1 cites P0; c2 cites P0 and r1; c3 cites r2.
inline disruptkit::CitationGraph six_node_graph(int c1_year = 2001, int c2_year = 2001,
                                                int c3_year = 2001) {
    return make_graph({{"P0", 2000, {}, {}},
                       {"r1", 1999, {}, {}},
                       {"r2", 1999, {}, {}},
                       {"c1", c1_year, {}, {}},
                       {"c2", c2_year, {}, {}},
                       {"c3", c3_year, {}, {}}},
                      {{"P0", "r1"},
                       {"P0", "r2"},
                       {"c1", "P0"},
                       {"c2", "P0"},
                       {"c2", "r1"},
                       {"c3", "r2"}});
}

// Coupling counts {0, 1, 5} against five references, with two external
// citers (N_R = 2).
inline disruptkit::CitationGraph threshold_graph() {
    std::vector<NodeSpec> nodes{{"FP", 2000, {}, {}}};
    std::vector<std::pair<std::string, std::string>> edges;
    for (const char* r : {"r1", "r2", "r3", "r4", "r5"}) {
        nodes.push_back({r, 1999, {}, {}});
        edges.emplace_back("FP", r);
    }
    nodes.push_back({"ca", 2001, {}, {}});
    edges.emplace_back("ca", "FP");
    nodes.push_back({"cb", 2001, {}, {}});
    edges.emplace_back("cb", "FP");
    edges.emplace_back("cb", "r1");
    nodes.push_back({"cc", 2001, {}, {}});
    edges.emplace_back("cc", "FP");
    for (const char* r : {"r1", "r2", "r3", "r4", "r5"}) edges.emplace_back("cc", r);
    nodes.push_back({"x1", 2001, {}, {}});
    edges.emplace_back("x1", "r1");
    nodes.push_back({"x2", 2001, {}, {}});
    edges.emplace_back("x2", "r2");
    return make_graph(nodes, std::move(edges));
}

// Shibayama-Wang illustration: two citers, three references, four coupling
// links. Extra non-pool references pad the citers' reference counts to 10.
inline disruptkit::CitationGraph coupling_graph(bool pad_references = false) {
    std::vector<NodeSpec> nodes{{"FP", 2000, {}, {}},  {"R1", 1999, {}, {}},
                                {"R2", 1999, {}, {}},  {"R3", 1999, {}, {}},
                                {"C1", 2001, {}, {}},  {"C2", 2001, {}, {}}};
    std::vector<std::pair<std::string, std::string>> edges{
        {"FP", "R1"}, {"FP", "R2"}, {"FP", "R3"}, {"C1", "FP"}, {"C1", "R1"},
        {"C1", "R2"}, {"C1", "R3"}, {"C2", "FP"}, {"C2", "R1"}};
    if (pad_references) {
        for (const char* z : {"Z1", "Z2", "Z3", "Z4"}) nodes.push_back({z, 1998, {}, {}});
        edges.emplace_back("C1", "Z1");
        edges.emplace_back("C1", "Z2");
        edges.emplace_back("C2", "Z3");
        edges.emplace_back("C2", "Z4");
    }
    return make_graph(nodes, std::move(edges));
}

}  // namespace dktest
