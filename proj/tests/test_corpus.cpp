#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "disruptkit/corpus.hpp"
#include "disruptkit/export.hpp"
#include "disruptkit/oracle.hpp"
#include "helpers.hpp"

using namespace disruptkit;

namespace {

Rational rat(std::int64_t n, std::int64_t d = 1) { return make_ratio(n, d); }

}  // namespace

TEST_CASE("trajectory: six-node graph settles at zero by t = 3") {
    auto g = dktest::six_node_graph(2001, 2002, 2003);
    ComputeContext ctx(g);
    IndicatorConfig config;
    auto traj = trajectory(ctx, g.require("P0"), config, 6);
    REQUIRE(traj.points.size() == 6);
    CHECK(*traj.points[0].value == 1);           // only c1 visible
    CHECK(*traj.points[1].value == 0);           // c2 joins group B
    CHECK(*traj.points[2].value == 0);           // c3 joins group R
    for (std::size_t i = 2; i < traj.points.size(); ++i)
        CHECK(*traj.points[i].value == *traj.points[2].value);
}

TEST_CASE("trajectory: uncited first year is not computable") {
    auto g = dktest::make_graph(
        {{"FP", 2000, {}, {}}, {"r", 1999, {}, {}}, {"c", 2005, {}, {}}},
        {{"FP", "r"}, {"c", "FP"}});
    ComputeContext ctx(g);
    auto traj = trajectory(ctx, g.require("FP"), IndicatorConfig{}, 6);
    CHECK(!traj.points[0].value);
    CHECK(traj.points[5].value);
    // a year-less focal paper cannot have a trajectory
    auto g2 = dktest::make_graph({{"FP", std::nullopt, {}, {}}, {"r", 1999, {}, {}}},
                                 {{"FP", "r"}});
    ComputeContext ctx2(g2);
    CHECK_THROWS_AS(trajectory(ctx2, g2.require("FP"), IndicatorConfig{}, 3),
                    DataError);
}

TEST_CASE("trajectory: stabilization for every base once events end") {
    auto raw = oracle::random_graph(911, 60, 3.0, {2000, 2004}, 8);
    auto g = oracle::to_graph(raw);
    ComputeContext ctx(g);
    const int horizon = 5;  // all events end within 4 years of any focal year
    for (BaseIndicator base :
         {BaseIndicator::di1, BaseIndicator::di_nor, BaseIndicator::di_star,
          BaseIndicator::di_hash, BaseIndicator::dep, BaseIndicator::orig_base,
          BaseIndicator::dual_dc, BaseIndicator::ed}) {
        IndicatorConfig config;
        config.base = base;
        for (NodeIdx fp = 0; fp < g.size(); fp += 7) {
            if (g.out_edges(fp).empty() || !g.record(fp).year) continue;
            auto traj = trajectory(ctx, fp, config, horizon + 4);
            for (std::size_t i = static_cast<std::size_t>(horizon);
                 i < traj.points.size(); ++i) {
                CHECK(traj.points[i].value.has_value() ==
                      traj.points[horizon - 1].value.has_value());
                if (traj.points[i].value)
                    CHECK(*traj.points[i].value == *traj.points[horizon - 1].value);
            }
        }
    }
}

TEST_CASE("wei classification quadrants and ties") {
    CHECK(wei_classify(rat(1, 2), 199) == WeiLabel::revolutionary);
    CHECK(wei_classify(rat(-1, 5), 9) == WeiLabel::low_impact_incremental);
    CHECK(wei_classify(rat(-1, 5), 500) == WeiLabel::high_impact_incremental);
    CHECK(wei_classify(rat(1, 2), 9) == WeiLabel::low_impact_direction_changing);
    // ties fall to the incremental / low-impact side
    CHECK(wei_classify(0, 100000) == WeiLabel::high_impact_incremental);
    CHECK(wei_classify(0, 5) == WeiLabel::low_impact_incremental);
    CHECK(wei_classify(rat(1, 2), 99) == WeiLabel::low_impact_direction_changing);
}

TEST_CASE("chen classification quadrants and ties") {
    const Rational half = rat(1, 2);
    CHECK(chen_classify(rat(3, 5), rat(3, 5), half, half) == ChenLabel::dual);
    CHECK(chen_classify(rat(3, 5), rat(1, 10), half, half) == ChenLabel::disruptive_only);
    CHECK(chen_classify(rat(1, 10), rat(3, 5), half, half) ==
          ChenLabel::consolidating_only);
    CHECK(chen_classify(half, half, half, half) == ChenLabel::neither);
}

TEST_CASE("classification is monotone in the scores") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Rational d1 = rat(static_cast<int>(rng() % 100), 100);
        const Rational d2 = d1 + rat(static_cast<int>(rng() % 100) + 1, 100);
        const std::uint64_t c1 = rng() % 1000;
        const std::uint64_t c2 = c1 + 1 + rng() % 1000;
        auto rank_wei = [](WeiLabel l) {
            return l == WeiLabel::revolutionary || l == WeiLabel::high_impact_incremental;
        };
        // more citations never demote high-impact to low-impact
        CHECK((rank_wei(wei_classify(d1, c2)) || !rank_wei(wei_classify(d1, c1))));
        auto disruptive_side = [](WeiLabel l) {
            return l == WeiLabel::revolutionary ||
                   l == WeiLabel::low_impact_direction_changing;
        };
        CHECK((disruptive_side(wei_classify(d2, c1)) ||
               !disruptive_side(wei_classify(d1, c1))));
    }
}

TEST_CASE("inverse DEP pins the sample maximum at one") {
    CHECK(inverse_dep({rat(1, 2), rat(2)}) == std::vector<Rational>{rat(5, 2), rat(1)});
    CHECK(inverse_dep({rat(7, 3)}) == std::vector<Rational>{rat(1)});
    CHECK(inverse_dep({rat(2), rat(2), rat(2)}) ==
          std::vector<Rational>{rat(1), rat(1), rat(1)});
    CHECK_THROWS_AS(inverse_dep({}), DataError);
    // strictly decreasing in dep
    auto out = inverse_dep({rat(1), rat(2), rat(3)});
    CHECK(out[0] > out[1]);
    CHECK(out[1] > out[2]);
}

TEST_CASE("percentile ranks use midranks") {
    CHECK(percentile_ranks({rat(1), rat(2), rat(3)}) ==
          std::vector<Rational>{rat(50, 3), rat(50), rat(250, 3)});
    CHECK(percentile_ranks({rat(1), rat(1), rat(3)}) ==
          std::vector<Rational>{rat(100, 3), rat(100, 3), rat(250, 3)});
    CHECK(percentile_ranks({rat(9)}) == std::vector<Rational>{rat(50)});
    CHECK_THROWS_AS(percentile_ranks({}), DataError);
}

TEST_CASE("property: percentile ranks are permutation-equivariant, mean 50") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<Rational> values;
        for (std::size_t i = 0; i < n; ++i)
            values.push_back(rat(static_cast<int>(rng() % 15)));
        auto ranks = percentile_ranks(values);
        Rational sum = 0;
        for (const auto& r : ranks) sum += r;
        CHECK(sum / BigInt(n) == 50);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Rational> shuffled;
        for (std::size_t i : perm) shuffled.push_back(values[i]);
        auto shuffled_ranks = percentile_ranks(shuffled);
        for (std::size_t i = 0; i < n; ++i) CHECK(shuffled_ranks[i] == ranks[perm[i]]);
    }
}

TEST_CASE("eligibility filter applies the recommended guards") {
    std::vector<dktest::NodeSpec> nodes{{"few_refs", 2000, {}, {}},
                                        {"no_refs", 2000, {}, {}},
                                        {"good", 2000, {}, {}},
                                        {"tiny", 2000, {}, {}}};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 12; ++i) {
        nodes.push_back({"ref" + std::to_string(i + 10), 1999, {}, {}});
        if (i < 9) edges.emplace_back("few_refs", "ref" + std::to_string(i + 10));
        edges.emplace_back("good", "ref" + std::to_string(i + 10));
    }
    edges.emplace_back("tiny", "ref10");
    for (int i = 0; i < 50; ++i) {
        nodes.push_back({"cite" + std::to_string(i + 10), 2001, {}, {}});
        edges.emplace_back("cite" + std::to_string(i + 10), "few_refs");
        edges.emplace_back("cite" + std::to_string(i + 10), "good");
        edges.emplace_back("cite" + std::to_string(i + 10), "no_refs");
        if (i == 0) edges.emplace_back("cite" + std::to_string(i + 10), "tiny");
    }
    auto g = dktest::make_graph(nodes, edges);

    auto eligible = eligibility_filter(g);  // defaults: 10 refs, 10 citations
    std::vector<std::string> ids;
    for (NodeIdx p : eligible) ids.push_back(g.record(p).id);
    CHECK(ids == std::vector<std::string>{"good"});

    // zero-reference papers stay excluded whatever the thresholds
    auto loose = eligibility_filter(g, 0, 0);
    ids.clear();
    for (NodeIdx p : loose) ids.push_back(g.record(p).id);
    CHECK(std::find(ids.begin(), ids.end(), "no_refs") == ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "tiny") != ids.end());

    // recency floor
    auto recent = eligibility_filter(g, 0, 0, 2001);
    CHECK(recent.empty());
}

TEST_CASE("batch compute: ordering, determinism, unknown ids") {
    auto raw = oracle::random_graph(1234, 150, 4.0, {1995, 2005}, 0);
    auto g = oracle::to_graph(raw);
    ComputeContext ctx(g);
    IndicatorConfig config;
    config.window = Window::relative(5);

    std::vector<std::string> ids;
    for (NodeIdx p = 0; p < g.size(); ++p) ids.push_back(g.record(p).id);
    // shuffle to prove output ordering is by id, not input order
    std::mt19937_64 rng(7);
    std::shuffle(ids.begin(), ids.end(), rng);

    auto serial = batch_compute(ctx, ids, config, 1);
    auto parallel = batch_compute(ctx, ids, config, 8);
    REQUIRE(serial.size() == parallel.size());
    CHECK(std::is_sorted(serial.begin(), serial.end(),
                          [](const ScoreRecord& a, const ScoreRecord& b) {
                              return a.fp < b.fp;
                          }));

    std::ostringstream s1, s2;
    export_scores(serial, s1);
    export_scores(parallel, s2);
    CHECK(s1.str() == s2.str());

    // not-computable papers appear as flagged records, never dropped
    CHECK(serial.size() == g.size());
    bool has_na = false;
    for (const auto& rec : serial)
        if (!rec.value) has_na = true;
    CHECK(has_na);

    CHECK_THROWS_WITH_AS(batch_compute(ctx, {"nope1", "P000001", "nope2"}, config, 1),
                         doctest::Contains("nope1"), DataError);
}

TEST_CASE("median is exact") {
    CHECK(median({rat(3), rat(1), rat(2)}) == rat(2));
    CHECK(median({rat(1), rat(2), rat(3), rat(4)}) == rat(5, 2));
    CHECK_THROWS_AS(median({}), DataError);
}
