#pragma once
// The indicator formula family and the modifier-composition engine.
//
// Every formula returns an exact rational or an explicit not-computable
// outcome; a zero denominator is never silently coerced to a score.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disruptkit/entity.hpp"
#include "disruptkit/focal.hpp"
#include "disruptkit/rational.hpp"

namespace disruptkit {

enum class BaseIndicator {
    di1,
    di_nor,
    di_star,
    di_hash,
    dep,
    orig_base,
    orig_yc,
    orig_zr,
    dual_dc,
    ed,
};

enum class ThresholdSemantics { reclassify, exclude };

const char* to_string(BaseIndicator base);
BaseIndicator parse_base_indicator(std::string_view token);
const char* to_string(ThresholdSemantics semantics);
ThresholdSemantics parse_threshold_semantics(std::string_view token);
const char* to_string(ElementMode mode);
ElementMode parse_element_mode(std::string_view token);

struct IndicatorConfig {
    BaseIndicator base = BaseIndicator::di1;
    std::optional<int> l_threshold;  // >= 2 when present; absent behaves as l=1
    ThresholdSemantics l_semantics = ThresholdSemantics::reclassify;
    Rational x_percent = 0;  // [0, 100]; 0 excludes nothing
    bool field_pool = false;
    bool m_weight = false;
    Window window = Window::unbounded();
    Rational alpha = make_ratio(1, 2);  // ed only
    Rational scale_l = 1;               // weighted originality only, > 0
    ElementMode mode = ElementMode::entity;
};

// Rejects out-of-range parameters and inapplicable combinations (Table-1 "/"
// cells that are representable here). Throws UsageError.
void validate_config(const IndicatorConfig& config);

// A score or an explicit not-computable outcome, plus warnings.
struct Score {
    std::optional<Rational> value;
    std::vector<std::string> warnings;

    bool computable() const { return value.has_value(); }
    static Score ok(Rational v) { return {std::move(v), {}}; }
    static Score not_computable(const char* reason) { return {std::nullopt, {reason}}; }
};

struct DualScore {
    Rational d;  // mean of d_i over retained priors
    Rational c;  // mean of c_i over retained priors
    struct PerPrior {
        NodeIdx prior;
        Rational d_i, c_i;
    };
    std::vector<PerPrior> per_prior;
    std::uint64_t skipped_priors = 0;
};

struct ScoreRecord {
    std::string fp;
    IndicatorConfig config;
    std::optional<Rational> value;
    std::vector<std::pair<std::string, Rational>> components;
    std::vector<std::string> warnings;

    bool computable() const { return value.has_value(); }
    const Rational* component(std::string_view name) const;
};

// --- base formulas -----------------------------------------------------------

// (N_F - N_B) / (N_F + N_B + N_R), in [-1, 1].
Score di1(const FocalNetwork& net);

// (N_F - N_B) / (N_F + N_B), in [-1, 1].
Score di_nor(const FocalNetwork& net);

// DI* = N_F / (N_F+N_B+N_R) and DI# = N_B / (N_F+N_B+N_R), both in [0, 1].
std::pair<Score, Score> di_star_hash(const FocalNetwork& net);

// m_t = distinct citers of fp, n_t = distinct papers citing fp or any pool
// reference; the mDI weighting ratio is m_t/n_t in [0, 1].
struct MWeight {
    std::uint64_t m_t = 0;
    std::uint64_t n_t = 0;
    Rational ratio() const { return make_ratio(static_cast<std::int64_t>(m_t),
                                               static_cast<std::int64_t>(n_t)); }
};
std::optional<MWeight> m_weight(const FocalNetwork& net);

// Coupling-threshold variant. reclassify: citers below l count toward F;
// exclude: citers with 1 <= coupling < l are dropped. l=1 is the identity.
Score di_threshold(const FocalNetwork& net, int l, ThresholdSemantics semantics);

// Removes the ceil(x*R/100) most-cited pool references (ties broken by
// ascending id) and evaluates di1 on the reduced network.
Score di_percent_excluded(const FocalNetwork& net, const Rational& x);

// Indices into the pool of the references the X% rule removes.
std::vector<std::size_t> percent_excluded_indices(const FocalNetwork& net,
                                                  const Rational& x);

// T_R / C, >= 0 with no upper bound.
Score dep(const FocalNetwork& net);

enum class OriginalityMode { base, weighted_yc, weighted_zr };

// base: 1 - T_R/(C*R). weighted_yc: 1 - (L/R)*T_R/sum(y_c).
// weighted_zr: 1 - L*T_R/(sum(y_c)*sum(z_r)).
Score originality(const FocalNetwork& net, OriginalityMode mode, const Rational& L,
                  const std::vector<std::uint64_t>& citer_ref_counts,
                  const std::vector<std::uint64_t>& ref_cit_counts);

// Chen D/C over per-prior-art networks; zero-denominator priors are skipped.
std::optional<DualScore> dual_dc(const std::vector<PriorArtNetwork>& priors,
                                 std::vector<std::string>* warnings = nullptr);

// --- composition -------------------------------------------------------------

class ComputeContext;

// Applies the configured modifiers in fixed order (field pool, X% exclusion,
// l threshold, base formula, m weighting) and records components + warnings.
// Per-paper preconditions surface as not-computable records, not exceptions.
ScoreRecord compute_composite(ComputeContext& ctx, NodeIdx fp,
                              const IndicatorConfig& config);
ScoreRecord compute_composite(const CitationGraph& graph, std::string_view fp,
                              const IndicatorConfig& config);

// Shared read-only caches for batch evaluation: the journal/year index for
// field pools and per-window cohort statistics for mED. Build before fanning
// out; lookups after prebuild are lock-free.
class ComputeContext {
  public:
    explicit ComputeContext(const CitationGraph& graph) : graph_(graph) {}

    const CitationGraph& graph() const { return graph_; }

    // Builds whatever `config` will need so parallel workers only read.
    void prebuild(const IndicatorConfig& config);

    const std::vector<NodeIdx>* field_cohort(const std::string& journal, int year);
    ReferencePool field_pool(NodeIdx fp);
    const CohortStats& cohorts(const Window& window, ElementMode mode);

  private:
    void build_field_index();

    const CitationGraph& graph_;
    bool field_index_built_ = false;
    std::map<std::pair<std::string, int>, std::vector<NodeIdx>> field_index_;
    std::map<std::tuple<int, int, int>, CohortStats> cohort_cache_;
};

}  // namespace disruptkit
