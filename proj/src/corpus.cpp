#include "disruptkit/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace disruptkit {

Trajectory trajectory(ComputeContext& ctx, NodeIdx fp, const IndicatorConfig& config,
                      int max_t) {
    const PaperRecord& rec = ctx.graph().record(fp);
    if (!rec.year)
        throw DataError("paper " + rec.id + " has no year; trajectory undefined");
    if (max_t < 1) throw UsageError("trajectory needs max_t >= 1");

    Trajectory out;
    out.fp = rec.id;
    out.config = config;
    out.points.reserve(static_cast<std::size_t>(max_t));
    for (int t = 1; t <= max_t; ++t) {
        IndicatorConfig point_config = config;
        point_config.window = Window::relative(t);
        ScoreRecord score = compute_composite(ctx, fp, point_config);
        out.points.push_back({t, score.value, score.warnings});
    }
    return out;
}

const char* to_string(WeiLabel label) {
    switch (label) {
        case WeiLabel::revolutionary: return "revolutionary";
        case WeiLabel::high_impact_incremental: return "high_impact_incremental";
        case WeiLabel::low_impact_direction_changing:
            return "low_impact_direction_changing";
        case WeiLabel::low_impact_incremental: return "low_impact_incremental";
    }
    return "low_impact_incremental";
}

const char* to_string(ChenLabel label) {
    switch (label) {
        case ChenLabel::dual: return "dual";
        case ChenLabel::disruptive_only: return "disruptive_only";
        case ChenLabel::consolidating_only: return "consolidating_only";
        case ChenLabel::neither: return "neither";
    }
    return "neither";
}

WeiLabel wei_classify(const Rational& di1_score, std::uint64_t citations,
                      const Rational& di_cut, double logc_cut) {
    const bool disruptive = di1_score > di_cut;
    const bool high_impact =
        std::log10(static_cast<double>(citations) + 1.0) > logc_cut;
    if (disruptive && high_impact) return WeiLabel::revolutionary;
    if (high_impact) return WeiLabel::high_impact_incremental;
    if (disruptive) return WeiLabel::low_impact_direction_changing;
    return WeiLabel::low_impact_incremental;
}

ChenLabel chen_classify(const Rational& d, const Rational& c, const Rational& d_cut,
                        const Rational& c_cut) {
    const bool high_d = d > d_cut;
    const bool high_c = c > c_cut;
    if (high_d && high_c) return ChenLabel::dual;
    if (high_d) return ChenLabel::disruptive_only;
    if (high_c) return ChenLabel::consolidating_only;
    return ChenLabel::neither;
}

std::vector<Rational> inverse_dep(const std::vector<Rational>& dep_scores) {
    if (dep_scores.empty()) throw DataError("inverse DEP needs a non-empty sample");
    const Rational top = *std::max_element(dep_scores.begin(), dep_scores.end());
    std::vector<Rational> out;
    out.reserve(dep_scores.size());
    for (const auto& v : dep_scores) out.push_back(top - v + 1);
    return out;
}

std::vector<Rational> percentile_ranks(const std::vector<Rational>& scores) {
    if (scores.empty()) throw DataError("percentile ranks need a non-empty sample");
    std::vector<Rational> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    const BigInt n(scores.size());
    std::vector<Rational> out;
    out.reserve(scores.size());
    for (const auto& v : scores) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), v);
        const BigInt below(lo - sorted.begin());
        const BigInt ties(hi - lo);
        out.push_back(Rational(100) * (Rational(below) + Rational(ties, 2)) / n);
    }
    return out;
}

std::vector<NodeIdx> eligibility_filter(const CitationGraph& graph, int min_refs,
                                        int min_cites, std::optional<int> min_year,
                                        const Window& window) {
    std::vector<NodeIdx> out;
    for (NodeIdx p = 0; p < graph.size(); ++p) {
        const PaperRecord& rec = graph.record(p);
        const std::size_t refs = graph.out_edges(p).size();
        if (refs == 0) continue;  // coverage-artifact guard, regardless of thresholds
        if (refs < static_cast<std::size_t>(min_refs)) continue;
        if (min_year && (!rec.year || *rec.year < *min_year)) continue;
        if (window.mode == Window::Mode::relative && !rec.year) continue;
        if (graph.citation_count(p, window, rec.year) <
            static_cast<std::uint64_t>(min_cites))
            continue;
        out.push_back(p);
    }
    return out;
}

std::vector<ScoreRecord> batch_compute(ComputeContext& ctx,
                                       const std::vector<std::string>& focal_ids,
                                       const IndicatorConfig& config, int jobs) {
    std::vector<NodeIdx> focal_set;
    focal_set.reserve(focal_ids.size());
    std::string unknown;
    for (const auto& id : focal_ids) {
        auto idx = ctx.graph().find(id);
        if (!idx) {
            if (!unknown.empty()) unknown += ", ";
            unknown += id;
            continue;
        }
        focal_set.push_back(*idx);
    }
    if (!unknown.empty()) throw DataError("unknown paper ids: " + unknown);
    return batch_compute(ctx, std::move(focal_set), config, jobs);
}

std::vector<ScoreRecord> batch_compute(ComputeContext& ctx,
                                       std::vector<NodeIdx> focal_set,
                                       const IndicatorConfig& config, int jobs) {
    validate_config(config);
    std::sort(focal_set.begin(), focal_set.end());
    focal_set.erase(std::unique(focal_set.begin(), focal_set.end()), focal_set.end());

    ctx.prebuild(config);  // workers must only read shared caches

    std::vector<ScoreRecord> records(focal_set.size());
    const int workers = std::max(
        1, std::min<int>(jobs, static_cast<int>(focal_set.size() ? focal_set.size() : 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i < focal_set.size(); ++i)
            records[i] = compute_composite(ctx, focal_set[i], config);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= focal_set.size() || failed.load()) break;
                try {
                    records[i] = compute_composite(ctx, focal_set[i], config);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    failed.store(true);
                    if (error_message.empty()) error_message = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) throw DataError(error_message);
    return records;
}

Rational median(std::vector<Rational> values) {
    if (values.empty()) throw DataError("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2;
}

}  // namespace disruptkit
