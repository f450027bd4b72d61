#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "disruptkit/graph.hpp"
#include "disruptkit/oracle.hpp"
#include "helpers.hpp"

using namespace disruptkit;

namespace {

const char* kNodes =
    R"({"id":"P1","year":2000,"journal":"J","discipline":null,"elements":["Alpha","beta "]}
{"id":"P2","year":2001,"journal":null,"discipline":null,"elements":null}
{"id":"P3","year":null,"journal":null,"discipline":null,"elements":null}
)";

CitationGraph load(const std::string& nodes, const std::string& edges) {
    std::istringstream n(nodes), e(edges);
    return load_graph(n, e);
}

}  // namespace

TEST_CASE("load_graph ingests nodes and edges") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,P2\nP1,P3\n");
    CHECK(g.size() == 3);
    CHECK(g.stats().node_count == 3);
    CHECK(g.stats().edge_count == 2);
    CHECK(g.stats().stub_nodes == 0);
    CHECK(g.stats().dropped_self_loops == 0);
    const NodeIdx p1 = g.require("P1");
    CHECK(g.out_edges(p1).size() == 2);
    CHECK(g.record(p1).year == 2000);
    CHECK(g.record(p1).journal == "J");
    // elements normalized: trimmed, lowercased, sorted
    REQUIRE(g.record(p1).elements.has_value());
    CHECK(*g.record(p1).elements == std::vector<std::string>{"alpha", "beta"});
    CHECK(!g.record(g.require("P3")).year.has_value());
}

TEST_CASE("self-loops are dropped and counted") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,P1\n");
    CHECK(g.stats().edge_count == 0);
    CHECK(g.stats().dropped_self_loops == 1);
    CHECK(g.out_edges(g.require("P1")).empty());
}

TEST_CASE("unknown endpoints become stub records") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,PX\n");
    CHECK(g.stats().stub_nodes == 1);
    const NodeIdx px = g.require("PX");
    CHECK(g.record(px).is_stub);
    CHECK(!g.record(px).year.has_value());
    CHECK(g.in_edges(px).size() == 1);
}

TEST_CASE("duplicate edges collapse but are counted") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,P2\nP1,P2\nP1,P2\n");
    CHECK(g.stats().edge_count == 1);
    CHECK(g.stats().duplicate_edges == 2);
}

TEST_CASE("malformed input reports the line number") {
    CHECK_THROWS_WITH_AS(load("{broken\n", "citing_id,cited_id\n"),
                         doctest::Contains("line 1"), DataError);
    CHECK_THROWS_AS(load(kNodes, "wrong,header\n"), DataError);
    CHECK_THROWS_WITH_AS(load(kNodes, "citing_id,cited_id\nP1,P2,P3\n"),
                         doctest::Contains("line 2"), DataError);
    // year bounds reject corruption
    CHECK_THROWS_AS(load(R"({"id":"P9","year":1200})" "\n", "citing_id,cited_id\n"),
                    DataError);
    // ids with surrounding whitespace are rejected
    CHECK_THROWS_AS(load(R"({"id":" P9","year":2000})" "\n", "citing_id,cited_id\n"),
                    DataError);
}

TEST_CASE("duplicate node ids: identical ok, conflicting metadata rejected") {
    const char* dup_same =
        "{\"id\":\"P1\",\"year\":2000}\n{\"id\":\"P1\",\"year\":2000}\n";
    CHECK(load(dup_same, "citing_id,cited_id\n").size() == 1);
    const char* dup_conflict =
        "{\"id\":\"P1\",\"year\":2000}\n{\"id\":\"P1\",\"year\":2001}\n";
    CHECK_THROWS_AS(load(dup_conflict, "citing_id,cited_id\n"), DataError);
}

TEST_CASE("cache round-trips field-for-field") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,P2\nP1,P3\nP2,PX\n");
    std::ostringstream sink;
    persist_graph(g, sink);
    std::istringstream source(sink.str());
    CHECK(load_cached(source) == g);
}

TEST_CASE("cache rejects bad magic and corruption") {
    auto g = load(kNodes, "citing_id,cited_id\nP1,P2\n");
    std::ostringstream sink;
    persist_graph(g, sink);
    std::string bytes = sink.str();

    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    std::istringstream bm(bad_magic);
    CHECK_THROWS_WITH_AS(load_cached(bm), doctest::Contains("version mismatch"),
                         DataError);

    std::string corrupted = bytes;
    corrupted[corrupted.size() / 2] ^= 0x5a;
    std::istringstream co(corrupted);
    CHECK_THROWS_AS(load_cached(co), DataError);
}

TEST_CASE("empty graph persists and loads") {
    auto g = load("", "");
    std::ostringstream sink;
    persist_graph(g, sink);
    std::istringstream source(sink.str());
    auto back = load_cached(source);
    CHECK(back.size() == 0);
    CHECK(back == g);
}

TEST_CASE("citation_count honours windows") {
    auto g = dktest::make_graph({{"P", 2000, {}, {}},
                                 {"a", 2001, {}, {}},
                                 {"b", 2002, {}, {}},
                                 {"c", 2010, {}, {}}},
                                {{"a", "P"}, {"b", "P"}, {"c", "P"}});
    const NodeIdx p = g.require("P");
    CHECK(g.citation_count(p, Window::relative(3), 2000) == 2);
    CHECK(g.citation_count(p, Window::unbounded(), {}) == 3);
    CHECK(g.citation_count(p, Window::absolute(2001), {}) == 1);
    CHECK_THROWS_AS(g.citation_count("nope", Window::unbounded(), {}), DataError);
    CHECK_THROWS_AS(g.citation_count(p, Window::relative(3), std::nullopt), DataError);
}

TEST_CASE("citers without a year count only under unbounded windows") {
    auto g = dktest::make_graph({{"P", 2000, {}, {}}, {"q", std::nullopt, {}, {}}},
                                {{"q", "P"}});
    const NodeIdx p = g.require("P");
    CHECK(g.citation_count(p, Window::unbounded(), {}) == 1);
    CHECK(g.citation_count(p, Window::relative(50), 2000) == 0);
    CHECK(g.citation_count(p, Window::absolute(2100), {}) == 0);
}

TEST_CASE("window parsing round-trips") {
    CHECK(Window::parse("unbounded") == Window::unbounded());
    CHECK(Window::parse("3") == Window::relative(3));
    CHECK(Window::parse("abs:2010") == Window::absolute(2010));
    CHECK(Window::relative(3).to_string() == "3");
    CHECK(Window::absolute(2010).to_string() == "abs:2010");
    CHECK_THROWS_AS(Window::parse("never"), UsageError);
    CHECK_THROWS_AS(Window::relative(0), UsageError);
}

TEST_CASE("property: transpose consistency and unbounded counts") {
    for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
        auto raw = oracle::random_graph(seed, 120, 4.0, {1990, 2010}, 0);
        auto g = oracle::to_graph(raw);
        for (NodeIdx a = 0; a < g.size(); ++a) {
            for (NodeIdx b : g.out_edges(a)) {
                auto in = g.in_edges(b);
                CHECK(std::binary_search(in.begin(), in.end(), a));
            }
            for (NodeIdx c : g.in_edges(a)) {
                auto out = g.out_edges(c);
                CHECK(std::binary_search(out.begin(), out.end(), a));
            }
            CHECK(g.citation_count(a, Window::unbounded(), {}) == g.in_edges(a).size());
        }
    }
}

TEST_CASE("property: ingestion determinism") {
    auto raw = oracle::random_graph(7, 150, 5.0, {1990, 2005}, 0);
    const std::string nodes = oracle::to_node_jsonl(raw);
    const std::string edges = oracle::to_edge_csv(raw);
    auto g1 = load(nodes, edges);
    auto g2 = load(nodes, edges);
    CHECK(g1 == g2);
    std::ostringstream s1, s2;
    persist_graph(g1, s1);
    persist_graph(g2, s2);
    CHECK(s1.str() == s2.str());
}
