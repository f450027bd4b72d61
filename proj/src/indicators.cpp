#include "disruptkit/indicators.hpp"

#include <algorithm>
#include <numeric>

namespace disruptkit {

namespace {

Rational counts_ratio(const BigInt& num, const BigInt& den) {
    return Rational(num, den);
}

void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const auto& w : from)
        if (std::find(into.begin(), into.end(), w) == into.end()) into.push_back(w);
}

struct ClassifiedCounts {
    std::uint64_t n_f = 0;
    std::uint64_t n_b = 0;
    std::uint64_t citers = 0;  // citers entering the score after the transform
};

// F/B classification under the optional coupling threshold. l <= 1 is the
// untransformed definition.
ClassifiedCounts classify(const FocalNetwork& net, std::optional<int> l,
                          ThresholdSemantics semantics) {
    ClassifiedCounts out;
    const std::uint64_t threshold =
        l && *l > 1 ? static_cast<std::uint64_t>(*l) : 1;
    for (const auto& c : net.citers) {
        const std::uint64_t k = c.coupled.size();
        if (k >= threshold) {
            ++out.n_b;
        } else if (semantics == ThresholdSemantics::reclassify || k == 0) {
            ++out.n_f;
        }  // exclude semantics drops 1 <= k < l entirely
    }
    out.citers = out.n_f + out.n_b;
    return out;
}

}  // namespace

const char* to_string(BaseIndicator base) {
    switch (base) {
        case BaseIndicator::di1: return "di1";
        case BaseIndicator::di_nor: return "di_nor";
        case BaseIndicator::di_star: return "di_star";
        case BaseIndicator::di_hash: return "di_hash";
        case BaseIndicator::dep: return "dep";
        case BaseIndicator::orig_base: return "orig_base";
        case BaseIndicator::orig_yc: return "orig_yc";
        case BaseIndicator::orig_zr: return "orig_zr";
        case BaseIndicator::dual_dc: return "dual_dc";
        case BaseIndicator::ed: return "ed";
    }
    return "di1";
}

BaseIndicator parse_base_indicator(std::string_view token) {
    for (BaseIndicator b :
         {BaseIndicator::di1, BaseIndicator::di_nor, BaseIndicator::di_star,
          BaseIndicator::di_hash, BaseIndicator::dep, BaseIndicator::orig_base,
          BaseIndicator::orig_yc, BaseIndicator::orig_zr, BaseIndicator::dual_dc,
          BaseIndicator::ed})
        if (token == to_string(b)) return b;
    throw UsageError("unknown indicator: " + std::string(token));
}

const char* to_string(ThresholdSemantics semantics) {
    return semantics == ThresholdSemantics::reclassify ? "reclassify" : "exclude";
}

ThresholdSemantics parse_threshold_semantics(std::string_view token) {
    if (token == "reclassify") return ThresholdSemantics::reclassify;
    if (token == "exclude") return ThresholdSemantics::exclude;
    throw UsageError("unknown l-semantics: " + std::string(token));
}

const char* to_string(ElementMode mode) {
    return mode == ElementMode::entity ? "entity" : "relation";
}

ElementMode parse_element_mode(std::string_view token) {
    if (token == "entity") return ElementMode::entity;
    if (token == "relation") return ElementMode::relation;
    throw UsageError("unknown element mode: " + std::string(token));
}

void validate_config(const IndicatorConfig& config) {
    if (config.l_threshold && *config.l_threshold < 2)
        throw UsageError("l threshold must be >= 2 (omit it for the base definition)");
    if (config.x_percent < 0 || config.x_percent > 100)
        throw UsageError("x-percent must lie in [0, 100]");
    if (config.alpha < 0 || config.alpha > 1)
        throw UsageError("alpha must lie in [0, 1]");
    if (config.scale_l <= 0) throw UsageError("originality scale L must be positive");
    if (config.window.mode == Window::Mode::relative && config.window.value < 1)
        throw UsageError("relative window must be >= 1 year");
}

const Rational* ScoreRecord::component(std::string_view name) const {
    for (const auto& [k, v] : components)
        if (k == name) return &v;
    return nullptr;
}

Score di1(const FocalNetwork& net) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    const BigInt nf = net.n_f(), nb = net.n_b(), nr = net.n_r();
    const BigInt den = nf + nb + nr;
    if (den == 0) return Score::not_computable(flag::empty_denominator);
    return Score::ok(counts_ratio(nf - nb, den));
}

Score di_nor(const FocalNetwork& net) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    const BigInt nf = net.n_f(), nb = net.n_b();
    if (nf + nb == 0) return Score::not_computable(flag::empty_denominator);
    return Score::ok(counts_ratio(nf - nb, nf + nb));
}

std::pair<Score, Score> di_star_hash(const FocalNetwork& net) {
    if (net.zero_reference()) {
        auto na = Score::not_computable(flag::zero_reference_artifact);
        return {na, na};
    }
    const BigInt nf = net.n_f(), nb = net.n_b(), nr = net.n_r();
    const BigInt den = nf + nb + nr;
    if (den == 0) {
        auto na = Score::not_computable(flag::empty_denominator);
        return {na, na};
    }
    return {Score::ok(counts_ratio(nf, den)), Score::ok(counts_ratio(nb, den))};
}

std::optional<MWeight> m_weight(const FocalNetwork& net) {
    MWeight w;
    w.m_t = net.c();
    w.n_t = net.c() + net.n_r();
    if (w.n_t == 0) return std::nullopt;
    return w;
}

Score di_threshold(const FocalNetwork& net, int l, ThresholdSemantics semantics) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    const ClassifiedCounts counts =
        classify(net, l > 1 ? std::optional<int>(l) : std::nullopt, semantics);
    const BigInt den = BigInt(counts.n_f) + BigInt(counts.n_b) + BigInt(net.n_r());
    if (den == 0) return Score::not_computable(flag::empty_denominator);
    return Score::ok(counts_ratio(BigInt(counts.n_f) - BigInt(counts.n_b), den));
}

std::vector<std::size_t> percent_excluded_indices(const FocalNetwork& net,
                                                  const Rational& x) {
    if (x <= 0 || net.pool.refs.empty()) return {};
    const BigInt k_big =
        ceil_rational(x * BigInt(net.pool.refs.size()) / BigInt(100));
    const std::size_t k = k_big.convert_to<std::size_t>();
    std::vector<std::size_t> order(net.pool.refs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (net.ref_counts[a] != net.ref_counts[b])
            return net.ref_counts[a] > net.ref_counts[b];
        return net.pool.refs[a] < net.pool.refs[b];  // ties: ascending id
    });
    order.resize(std::min(k, order.size()));
    std::sort(order.begin(), order.end());
    return order;
}

Score di_percent_excluded(const FocalNetwork& net, const Rational& x) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    if (x <= 0) return di1(net);
    const auto excluded = percent_excluded_indices(net, x);
    if (excluded.size() == net.pool.refs.size())
        return Score::not_computable(flag::all_refs_excluded);
    std::vector<NodeIdx> kept;
    kept.reserve(net.pool.refs.size() - excluded.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < net.pool.refs.size(); ++i) {
        if (next < excluded.size() && excluded[next] == i) {
            ++next;
            continue;
        }
        kept.push_back(net.pool.refs[i]);
    }
    return di1(restrict_pool(net, kept));
}

Score dep(const FocalNetwork& net) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    if (net.c() == 0) return Score::not_computable(flag::empty_denominator);
    return Score::ok(counts_ratio(BigInt(net.t_r()), BigInt(net.c())));
}

Score originality(const FocalNetwork& net, OriginalityMode mode, const Rational& L,
                  const std::vector<std::uint64_t>& citer_ref_counts,
                  const std::vector<std::uint64_t>& ref_cit_counts) {
    if (net.zero_reference()) return Score::not_computable(flag::zero_reference_artifact);
    if (net.c() == 0 || net.r() == 0)
        return Score::not_computable(flag::empty_denominator);
    const BigInt t_r = net.t_r();
    switch (mode) {
        case OriginalityMode::base:
            return Score::ok(Rational(1) -
                             counts_ratio(t_r, BigInt(net.c()) * BigInt(net.r())));
        case OriginalityMode::weighted_yc: {
            BigInt sum_y = 0;
            for (auto y : citer_ref_counts) sum_y += y;
            if (sum_y == 0) return Score::not_computable(flag::empty_denominator);
            return Score::ok(Rational(1) - L / BigInt(net.r()) * Rational(t_r, sum_y));
        }
        case OriginalityMode::weighted_zr: {
            BigInt sum_y = 0, sum_z = 0;
            for (auto y : citer_ref_counts) sum_y += y;
            for (auto z : ref_cit_counts) sum_z += z;
            if (sum_y == 0 || sum_z == 0)
                return Score::not_computable(flag::empty_denominator);
            return Score::ok(Rational(1) - L * Rational(t_r, sum_y * sum_z));
        }
    }
    return Score::not_computable(flag::empty_denominator);
}

std::optional<DualScore> dual_dc(const std::vector<PriorArtNetwork>& priors,
                                 std::vector<std::string>* warnings) {
    if (priors.empty()) return std::nullopt;
    DualScore out;
    Rational sum_d = 0, sum_c = 0;
    for (const auto& p : priors) {
        const BigInt den = BigInt(p.n_f_i) + BigInt(p.n_b_i) + BigInt(p.n_p_i);
        if (den == 0) {
            ++out.skipped_priors;
            continue;
        }
        DualScore::PerPrior pp{p.prior, counts_ratio(BigInt(p.n_f_i), den),
                               counts_ratio(BigInt(p.n_b_i), den)};
        sum_d += pp.d_i;
        sum_c += pp.c_i;
        out.per_prior.push_back(std::move(pp));
    }
    if (out.per_prior.empty()) return std::nullopt;
    if (out.skipped_priors > 0 && warnings)
        warnings->emplace_back(flag::skipped_priors);
    out.d = sum_d / BigInt(out.per_prior.size());
    out.c = sum_c / BigInt(out.per_prior.size());
    return out;
}

// --- composition -------------------------------------------------------------

void ComputeContext::build_field_index() {
    if (field_index_built_) return;
    for (NodeIdx p = 0; p < graph_.size(); ++p) {
        const PaperRecord& rec = graph_.record(p);
        if (rec.journal && rec.year)
            field_index_[{*rec.journal, *rec.year}].push_back(p);
    }
    field_index_built_ = true;
}

const std::vector<NodeIdx>* ComputeContext::field_cohort(const std::string& journal,
                                                         int year) {
    build_field_index();
    auto it = field_index_.find({journal, year});
    return it == field_index_.end() ? nullptr : &it->second;
}

ReferencePool ComputeContext::field_pool(NodeIdx fp) {
    const PaperRecord& rec = graph_.record(fp);
    if (!rec.journal || !rec.year)
        throw DataError("field pool requires journal and year for paper " + rec.id);
    const auto* cohort = field_cohort(*rec.journal, *rec.year);
    ReferencePool pool;
    pool.provenance = PoolProvenance::field_pool;
    pool.field_journal = rec.journal;
    pool.field_year = rec.year;
    if (cohort)
        for (NodeIdx p : *cohort) {
            auto out = graph_.out_edges(p);
            pool.refs.insert(pool.refs.end(), out.begin(), out.end());
        }
    std::sort(pool.refs.begin(), pool.refs.end());
    pool.refs.erase(std::unique(pool.refs.begin(), pool.refs.end()), pool.refs.end());
    return pool;
}

const CohortStats& ComputeContext::cohorts(const Window& window, ElementMode mode) {
    auto key = std::make_tuple(static_cast<int>(window.mode), window.value,
                               static_cast<int>(mode));
    auto it = cohort_cache_.find(key);
    if (it == cohort_cache_.end())
        it = cohort_cache_.emplace(key, cohort_stats(graph_, window, mode)).first;
    return it->second;
}

void ComputeContext::prebuild(const IndicatorConfig& config) {
    if (config.field_pool) build_field_index();
    if (config.base == BaseIndicator::ed && config.m_weight)
        cohorts(config.window, config.mode);
}

namespace {

void set_count(ScoreRecord& rec, const char* name, std::uint64_t v) {
    rec.components.emplace_back(name, Rational(BigInt(v)));
}

void set_value(ScoreRecord& rec, const char* name, const Rational& v) {
    rec.components.emplace_back(name, v);
}

ScoreRecord not_computable_record(ScoreRecord rec, const char* reason) {
    rec.value.reset();
    merge_warnings(rec.warnings, {reason});
    return rec;
}

}  // namespace

ScoreRecord compute_composite(ComputeContext& ctx, NodeIdx fp,
                              const IndicatorConfig& config) {
    validate_config(config);
    const CitationGraph& graph = ctx.graph();
    const PaperRecord& paper = graph.record(fp);

    ScoreRecord rec;
    rec.fp = paper.id;
    rec.config = config;

    if (config.window.mode == Window::Mode::relative && !paper.year)
        return not_computable_record(std::move(rec), flag::missing_focal_year);

    // Papers without indexed references never receive a score (the coverage
    // artifact would otherwise surface as a perfect disruption value).
    if (graph.out_edges(fp).empty())
        return not_computable_record(std::move(rec), flag::zero_reference_artifact);

    ReferencePool pool;
    if (config.field_pool) {
        if (!paper.journal || !paper.year)
            return not_computable_record(std::move(rec), flag::missing_journal_or_year);
        pool = ctx.field_pool(fp);
    } else {
        pool = own_references_pool(graph, fp);
    }

    FocalNetwork net = extract_focal_network(graph, fp, config.window, pool);
    merge_warnings(rec.warnings, net.flags);

    // (2) X% reference exclusion.
    if (config.x_percent > 0) {
        const auto excluded = percent_excluded_indices(net, config.x_percent);
        if (excluded.size() == net.pool.refs.size())
            return not_computable_record(std::move(rec), flag::all_refs_excluded);
        std::vector<NodeIdx> kept;
        kept.reserve(net.pool.refs.size() - excluded.size());
        std::size_t next = 0;
        for (std::size_t i = 0; i < net.pool.refs.size(); ++i) {
            if (next < excluded.size() && excluded[next] == i) {
                ++next;
                continue;
            }
            kept.push_back(net.pool.refs[i]);
        }
        net = restrict_pool(net, kept);
    }

    // (3) coupling threshold. Bases without an F/B split take it as a citer
    // filter (the only meaningful reading; flagged as coerced).
    const bool fb_base =
        config.base == BaseIndicator::di1 || config.base == BaseIndicator::di_nor ||
        config.base == BaseIndicator::di_star || config.base == BaseIndicator::di_hash;
    if (config.l_threshold && !fb_base) {
        net = filter_citers_min_coupling(net, *config.l_threshold);
        merge_warnings(rec.warnings, {flag::l_semantics_coerced});
    }

    // (4) base formula.
    ClassifiedCounts counts = classify(net, std::nullopt, ThresholdSemantics::reclassify);
    std::optional<Rational> ed_value;  // kept for the mED stage
    switch (config.base) {
        case BaseIndicator::di1:
        case BaseIndicator::di_nor:
        case BaseIndicator::di_star:
        case BaseIndicator::di_hash: {
            counts = classify(net, config.l_threshold, config.l_semantics);
            const BigInt nf = counts.n_f, nb = counts.n_b, nr = net.n_r();
            const BigInt den_full = nf + nb + nr;
            const BigInt den_nor = nf + nb;
            const BigInt den =
                config.base == BaseIndicator::di_nor ? den_nor : den_full;
            if (den == 0)
                return not_computable_record(std::move(rec), flag::empty_denominator);
            switch (config.base) {
                case BaseIndicator::di1: rec.value = counts_ratio(nf - nb, den); break;
                case BaseIndicator::di_nor: rec.value = counts_ratio(nf - nb, den); break;
                case BaseIndicator::di_star: rec.value = counts_ratio(nf, den); break;
                case BaseIndicator::di_hash: rec.value = counts_ratio(nb, den); break;
                default: break;
            }
            break;
        }
        case BaseIndicator::dep: {
            Score s = dep(net);
            merge_warnings(rec.warnings, s.warnings);
            if (!s.computable()) return not_computable_record(std::move(rec), flag::empty_denominator);
            rec.value = *s.value;
            break;
        }
        case BaseIndicator::orig_base:
        case BaseIndicator::orig_yc:
        case BaseIndicator::orig_zr: {
            std::vector<std::uint64_t> y_c;
            y_c.reserve(net.citers.size());
            for (const auto& link : net.citers)
                y_c.push_back(graph.out_edges(link.citer).size());
            const OriginalityMode mode =
                config.base == BaseIndicator::orig_base  ? OriginalityMode::base
                : config.base == BaseIndicator::orig_yc ? OriginalityMode::weighted_yc
                                                        : OriginalityMode::weighted_zr;
            Score s = originality(net, mode, config.scale_l, y_c, net.ref_counts);
            merge_warnings(rec.warnings, s.warnings);
            if (!s.computable()) return not_computable_record(std::move(rec), flag::empty_denominator);
            rec.value = *s.value;
            break;
        }
        case BaseIndicator::dual_dc: {
            auto priors = extract_prior_art_networks(net);
            auto ds = dual_dc(priors, &rec.warnings);
            if (!ds) return not_computable_record(std::move(rec), flag::no_priors_retained);
            rec.value = ds->d;
            set_value(rec, "d", ds->d);
            set_value(rec, "c_score", ds->c);
            break;
        }
        case BaseIndicator::ed: {
            EntityNetwork enet;
            try {
                enet = extract_entity_network(graph, net, config.mode);
            } catch (const DataError&) {
                return not_computable_record(std::move(rec), flag::missing_focal_elements);
            }
            merge_warnings(rec.warnings, enet.flags);
            auto score = ed(enet, config.alpha);
            if (!score)
                return not_computable_record(std::move(rec), flag::empty_denominator);
            merge_warnings(rec.warnings, score->warnings);
            rec.value = score->ed;
            ed_value = score->ed;
            set_value(rec, "ed_r", score->ed_r);
            set_value(rec, "ed_c", score->ed_c);
            if (config.m_weight) {
                try {
                    const CohortStats& stats = ctx.cohorts(config.window, config.mode);
                    MedScore m = med(graph, enet, *score, config.window, stats);
                    merge_warnings(rec.warnings, m.warnings);
                    rec.value = m.med;
                    set_value(rec, "m_t", m.m_t);
                } catch (const DataError&) {
                    return not_computable_record(std::move(rec), flag::missing_cohort_year);
                }
            }
            break;
        }
    }

    // (5) m_t/n_t weighting for the citation-based bases (mED handled above).
    if (config.m_weight && config.base != BaseIndicator::ed) {
        const std::uint64_t m_t = counts.citers;
        const std::uint64_t n_t = counts.citers + net.n_r();
        if (n_t == 0)
            return not_computable_record(std::move(rec), flag::empty_denominator);
        const Rational ratio = counts_ratio(BigInt(m_t), BigInt(n_t));
        rec.value = *rec.value * ratio;
        if (config.base == BaseIndicator::dual_dc) {
            for (auto& [name, v] : rec.components)
                if (name == "d" || name == "c_score") v = v * ratio;
        }
        set_count(rec, "m_t", m_t);
        set_count(rec, "n_t", n_t);
    }

    set_count(rec, "n_f", counts.n_f);
    set_count(rec, "n_b", counts.n_b);
    set_count(rec, "n_r", net.n_r());
    set_count(rec, "t_r", net.t_r());
    set_count(rec, "c", counts.citers);
    set_count(rec, "r", net.r());
    return rec;
}

ScoreRecord compute_composite(const CitationGraph& graph, std::string_view fp,
                              const IndicatorConfig& config) {
    ComputeContext ctx(graph);
    return compute_composite(ctx, graph.require(fp), config);
}

}  // namespace disruptkit
