#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "disruptkit/corpus.hpp"
#include "disruptkit/oracle.hpp"
#include "helpers.hpp"

using namespace disruptkit;

TEST_CASE("generator: identical seeds give identical corpora") {
    auto a = oracle::random_graph(42, 100, 4.0, {1990, 2010}, 6);
    auto b = oracle::random_graph(42, 100, 4.0, {1990, 2010}, 6);
    CHECK(a.edges == b.edges);
    CHECK(a.years == b.years);
    CHECK(a.elements == b.elements);
    auto c = oracle::random_graph(43, 100, 4.0, {1990, 2010}, 6);
    CHECK(a.edges != c.edges);
}

TEST_CASE("generator: citations respect time order") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto raw = oracle::random_graph(seed, 200, 5.0, {1980, 2020}, 0);
        for (const auto& [citing, cited] : raw.edges) {
            REQUIRE(raw.years.at(citing).has_value());
            REQUIRE(raw.years.at(cited).has_value());
            CHECK(*raw.years.at(citing) >= *raw.years.at(cited));
        }
    }
}

TEST_CASE("generator: two papers produce at most one edge") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto raw = oracle::random_graph(seed, 2, 1.0, {2000, 2000}, 0);
        CHECK(raw.edges.size() <= 1);
    }
}

TEST_CASE("naive oracle matches the frozen golden vectors") {
    oracle::RawEdgeList raw;
    // Table 2 row A as an explicit edge list
    raw.years["FP"] = 2000;
    raw.years["R1"] = 1999;
    raw.edges.emplace_back("FP", "R1");
    for (int i = 0; i < 90; ++i) {
        const std::string id = "F" + std::to_string(i + 100);
        raw.years[id] = 2001;
        raw.edges.emplace_back(id, "FP");
    }
    for (int i = 0; i < 10; ++i) {
        const std::string id = "B" + std::to_string(i + 100);
        raw.years[id] = 2001;
        raw.edges.emplace_back(id, "FP");
        raw.edges.emplace_back(id, "R1");
    }
    IndicatorConfig config;
    auto result = oracle::naive_score(raw, "FP", config);
    REQUIRE(result.value);
    CHECK(*result.value == make_ratio(4, 5));

    // Shibayama-Wang illustration
    oracle::RawEdgeList fig;
    fig.years["FP"] = 2000;
    for (const char* r : {"R1", "R2", "R3"}) {
        fig.years[r] = 1999;
        fig.edges.emplace_back("FP", r);
    }
    fig.years["C1"] = 2001;
    for (const char* t : {"FP", "R1", "R2", "R3"}) fig.edges.emplace_back("C1", t);
    fig.years["C2"] = 2001;
    fig.edges.emplace_back("C2", "FP");
    fig.edges.emplace_back("C2", "R1");
    config.base = BaseIndicator::orig_base;
    auto orig = oracle::naive_score(fig, "FP", config);
    REQUIRE(orig.value);
    CHECK(*orig.value == make_ratio(1, 3));
    config.base = BaseIndicator::dep;
    auto dep_score = oracle::naive_score(fig, "FP", config);
    REQUIRE(dep_score.value);
    CHECK(*dep_score.value == 2);
}

TEST_CASE("naive oracle equals the optimized path on sampled instances") {
    const std::vector<IndicatorConfig> configs = [] {
        std::vector<IndicatorConfig> out;
        for (BaseIndicator base :
             {BaseIndicator::di1, BaseIndicator::di_nor, BaseIndicator::di_star,
              BaseIndicator::di_hash, BaseIndicator::dep, BaseIndicator::orig_base,
              BaseIndicator::orig_yc, BaseIndicator::orig_zr, BaseIndicator::dual_dc,
              BaseIndicator::ed}) {
            IndicatorConfig c;
            c.base = base;
            c.window = Window::relative(4);
            out.push_back(c);
        }
        IndicatorConfig l5 = out[0];
        l5.l_threshold = 5;
        out.push_back(l5);
        IndicatorConfig x3 = out[0];
        x3.x_percent = make_ratio(3);
        out.push_back(x3);
        IndicatorConfig field = out[0];
        field.field_pool = true;
        out.push_back(field);
        IndicatorConfig m = out[0];
        m.m_weight = true;
        out.push_back(m);
        return out;
    }();

    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL, 8ULL}) {
        auto raw = oracle::random_graph(seed, 60, 3.0, {1998, 2006}, 8);
        auto g = oracle::to_graph(raw);
        ComputeContext ctx(g);
        for (const auto& config : configs) {
            for (NodeIdx fp = 0; fp < g.size(); fp += 3) {
                auto fast = compute_composite(ctx, fp, config);
                auto naive = oracle::naive_score(raw, g.record(fp).id, config);
                REQUIRE(fast.value.has_value() == naive.value.has_value());
                if (fast.value) CHECK(*fast.value == *naive.value);
            }
        }
    }
}
