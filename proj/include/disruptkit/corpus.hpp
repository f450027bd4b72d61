#pragma once
// Corpus-level procedures on top of single-paper scores: window trajectories,
// quadrant classification, percentile ranks, sample-relative inverse DEP,
// eligibility filtering, and the deterministic parallel batch runner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disruptkit/indicators.hpp"

namespace disruptkit {

struct TrajectoryPoint {
    int t = 0;  // relative window length in years
    std::optional<Rational> value;
    std::vector<std::string> warnings;
};

struct Trajectory {
    std::string fp;
    IndicatorConfig config;
    std::vector<TrajectoryPoint> points;  // t = 1..max_t, strictly increasing
};

// One point per relative window t = 1..max_t. Throws when fp has no year.
Trajectory trajectory(ComputeContext& ctx, NodeIdx fp, const IndicatorConfig& config,
                      int max_t);

enum class WeiLabel {
    revolutionary,
    high_impact_incremental,
    low_impact_direction_changing,
    low_impact_incremental,
};

enum class ChenLabel { dual, disruptive_only, consolidating_only, neither };

const char* to_string(WeiLabel label);
const char* to_string(ChenLabel label);

// Disruptive iff score > di_cut; high impact iff log10(citations+1) > logc_cut.
// Exact ties fall to the non-disruptive / low-impact side.
WeiLabel wei_classify(const Rational& di1_score, std::uint64_t citations,
                      const Rational& di_cut = Rational(0), double logc_cut = 2.0);

ChenLabel chen_classify(const Rational& d, const Rational& c, const Rational& d_cut,
                        const Rational& c_cut);

// max(sample) - dep + 1 for each entry; sample-relative. Throws on empty input.
std::vector<Rational> inverse_dep(const std::vector<Rational>& dep_scores);

// Midrank percentiles: 100 * (strictly_below + 0.5 * ties) / N.
std::vector<Rational> percentile_ranks(const std::vector<Rational>& scores);

// Papers meeting the reference/citation/recency thresholds within the window.
// Zero-reference papers are always excluded. Relative windows resolve against
// each paper's own year, so papers without a year are excluded under them.
std::vector<NodeIdx> eligibility_filter(const CitationGraph& graph, int min_refs = 10,
                                        int min_cites = 10,
                                        std::optional<int> min_year = std::nullopt,
                                        const Window& window = Window::unbounded());

// One record per focal id, ascending; output is independent of `jobs`.
// Unknown ids are reported collectively.
std::vector<ScoreRecord> batch_compute(ComputeContext& ctx,
                                       const std::vector<std::string>& focal_ids,
                                       const IndicatorConfig& config, int jobs = 1);
std::vector<ScoreRecord> batch_compute(ComputeContext& ctx,
                                       std::vector<NodeIdx> focal_set,
                                       const IndicatorConfig& config, int jobs = 1);

// Exact rational median (mean of the middle pair for even sizes).
Rational median(std::vector<Rational> values);

}  // namespace disruptkit
