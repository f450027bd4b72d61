#include "disruptkit/oracle.hpp"

#include <algorithm>
#include <json.hpp>
#include <random>

namespace disruptkit {
namespace oracle {

namespace {

// Everything below recomputes the definitions with plain loops over the edge
// list. Keep it dumb: no sorted-vector merging, no CSR, no reuse of the
// production extraction path.
struct NaiveCorpus {
    std::vector<std::pair<std::string, std::string>> edges;  // dedup, no self-loops
    const RawEdgeList* raw;

    explicit NaiveCorpus(const RawEdgeList& r) : raw(&r) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& e : r.edges) {
            if (e.first == e.second) continue;
            if (seen.insert(e).second) edges.push_back(e);
        }
    }

    std::optional<int> year(const std::string& p) const {
        auto it = raw->years.find(p);
        return it == raw->years.end() ? std::nullopt : it->second;
    }

    std::set<std::string> element_set(const std::string& p) const {
        auto it = raw->elements.find(p);
        if (it == raw->elements.end()) return {};
        return {it->second.begin(), it->second.end()};
    }

    bool windowed(const std::string& q, const Window& w,
                  std::optional<int> origin) const {
        if (w.mode == Window::Mode::unbounded) return true;
        auto y = year(q);
        if (!y) return false;
        if (w.mode == Window::Mode::absolute) return *y <= w.value;
        return *y <= *origin + w.value;
    }

    bool cites(const std::string& a, const std::string& b) const {
        for (const auto& e : edges)
            if (e.first == a && e.second == b) return true;
        return false;
    }

    std::set<std::string> refs_of(const std::string& p) const {
        std::set<std::string> out;
        for (const auto& e : edges)
            if (e.first == p) out.insert(e.second);
        return out;
    }

    std::set<std::string> papers() const {
        std::set<std::string> out;
        for (const auto& e : edges) {
            out.insert(e.first);
            out.insert(e.second);
        }
        for (const auto& [p, _] : raw->years) out.insert(p);
        for (const auto& [p, _] : raw->elements) out.insert(p);
        for (const auto& [p, _] : raw->journals) out.insert(p);
        return out;
    }
};

std::set<std::string> pair_transform(const std::set<std::string>& elems,
                                     ElementMode mode) {
    if (mode == ElementMode::entity) return elems;
    std::set<std::string> pairs;
    for (const auto& a : elems)
        for (const auto& b : elems)
            if (a < b) pairs.insert(a + '\x1f' + b);
    return pairs;
}

NaiveResult na(const char* reason) { return {std::nullopt, {reason}}; }

std::uint64_t naive_shared_citers(const NaiveCorpus& corpus, const std::string& paper,
                                  const Window& window, ElementMode mode) {
    auto own = pair_transform(corpus.element_set(paper), mode);
    if (own.empty()) return 0;
    std::uint64_t n = 0;
    for (const auto& q : corpus.papers()) {
        if (q == paper || !corpus.cites(q, paper)) continue;
        if (!corpus.windowed(q, window, corpus.year(paper))) continue;
        auto theirs = pair_transform(corpus.element_set(q), mode);
        bool shares = false;
        for (const auto& e : theirs)
            if (own.count(e)) shares = true;
        if (shares) ++n;
    }
    return n;
}

}  // namespace

std::vector<std::string> RawEdgeList::all_papers() const {
    std::set<std::string> out;
    for (const auto& e : edges) {
        out.insert(e.first);
        out.insert(e.second);
    }
    for (const auto& [p, _] : years) out.insert(p);
    for (const auto& [p, _] : elements) out.insert(p);
    for (const auto& [p, _] : journals) out.insert(p);
    return {out.begin(), out.end()};
}

NaiveResult naive_score(const RawEdgeList& raw, const std::string& fp,
                        const IndicatorConfig& config) {
    validate_config(config);
    NaiveCorpus corpus(raw);
    const auto fp_year = corpus.year(fp);
    const auto all = corpus.papers();

    if (config.window.mode == Window::Mode::relative && !fp_year)
        return na(flag::missing_focal_year);
    if (corpus.refs_of(fp).empty()) return na(flag::zero_reference_artifact);

    // Reference pool: own references, or the same-journal-same-year union.
    std::set<std::string> pool;
    if (config.field_pool) {
        auto jit = raw.journals.find(fp);
        if (jit == raw.journals.end() || !fp_year)
            return na(flag::missing_journal_or_year);
        for (const auto& p : all) {
            auto pj = raw.journals.find(p);
            if (pj == raw.journals.end() || pj->second != jit->second) continue;
            if (corpus.year(p) != fp_year) continue;
            for (const auto& r : corpus.refs_of(p)) pool.insert(r);
        }
    } else {
        pool = corpus.refs_of(fp);
    }

    // Windowed citers of fp and their coupling counts against the pool.
    std::vector<std::string> citers;
    for (const auto& q : all)
        if (q != fp && corpus.cites(q, fp) && corpus.windowed(q, config.window, fp_year))
            citers.push_back(q);

    auto coupled = [&](const std::string& c) {
        std::set<std::string> out;
        for (const auto& r : pool)
            if (corpus.cites(c, r)) out.insert(r);
        return out;
    };

    // X% exclusion: drop the most-cited ceil(x*R/100) pool references.
    if (config.x_percent > 0) {
        std::vector<std::pair<std::string, std::uint64_t>> ranked;
        for (const auto& r : pool) {
            std::uint64_t count = 0;
            for (const auto& q : all)
                if (q != r && corpus.cites(q, r) &&
                    corpus.windowed(q, config.window, fp_year))
                    ++count;
            ranked.emplace_back(r, count);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        const BigInt k_big =
            ceil_rational(config.x_percent * BigInt(pool.size()) / BigInt(100));
        const std::size_t k = k_big.convert_to<std::size_t>();
        if (k >= pool.size()) return na(flag::all_refs_excluded);
        for (std::size_t i = 0; i < k; ++i) pool.erase(ranked[i].first);
    }

    // Coupling-threshold coercion for bases without an F/B reclassification.
    const bool fb_base =
        config.base == BaseIndicator::di1 || config.base == BaseIndicator::di_nor ||
        config.base == BaseIndicator::di_star || config.base == BaseIndicator::di_hash;
    std::vector<std::string> warnings;
    if (config.l_threshold && !fb_base) {
        std::vector<std::string> kept;
        for (const auto& c : citers)
            if (coupled(c).size() >= static_cast<std::size_t>(*config.l_threshold))
                kept.push_back(c);
        citers = kept;
        warnings.emplace_back(flag::l_semantics_coerced);
    }

    // Group R: windowed papers citing >= 1 pool reference but not fp. The
    // windowed-citers-of-fp set is excluded wholesale (also under exclude
    // semantics).
    std::vector<std::string> all_windowed_citers;
    for (const auto& q : all)
        if (q != fp && corpus.cites(q, fp) && corpus.windowed(q, config.window, fp_year))
            all_windowed_citers.push_back(q);
    std::uint64_t group_r = 0;
    for (const auto& q : all) {
        if (q == fp) continue;
        if (std::find(all_windowed_citers.begin(), all_windowed_citers.end(), q) !=
            all_windowed_citers.end())
            continue;
        if (!corpus.windowed(q, config.window, fp_year)) continue;
        bool hits = false;
        for (const auto& r : pool)
            if (corpus.cites(q, r)) hits = true;
        if (hits) ++group_r;
    }

    // F/B classification under the optional threshold.
    std::uint64_t n_f = 0, n_b = 0;
    const std::uint64_t threshold =
        (fb_base && config.l_threshold) ? static_cast<std::uint64_t>(*config.l_threshold)
                                        : 1;
    std::uint64_t retained = 0;
    std::uint64_t t_r = 0;
    for (const auto& c : citers) {
        const std::uint64_t k = coupled(c).size();
        t_r += k;
        if (k >= threshold) {
            ++n_b;
            ++retained;
        } else if (!fb_base || config.l_semantics == ThresholdSemantics::reclassify ||
                   k == 0) {
            ++n_f;
            ++retained;
        }
    }

    NaiveResult result;
    result.warnings = warnings;
    std::optional<Rational> value;
    switch (config.base) {
        case BaseIndicator::di1: {
            const BigInt den = BigInt(n_f) + BigInt(n_b) + BigInt(group_r);
            if (den == 0) return na(flag::empty_denominator);
            value = Rational(BigInt(n_f) - BigInt(n_b), den);
            break;
        }
        case BaseIndicator::di_nor: {
            const BigInt den = BigInt(n_f) + BigInt(n_b);
            if (den == 0) return na(flag::empty_denominator);
            value = Rational(BigInt(n_f) - BigInt(n_b), den);
            break;
        }
        case BaseIndicator::di_star:
        case BaseIndicator::di_hash: {
            const BigInt den = BigInt(n_f) + BigInt(n_b) + BigInt(group_r);
            if (den == 0) return na(flag::empty_denominator);
            value = Rational(config.base == BaseIndicator::di_star ? BigInt(n_f)
                                                                   : BigInt(n_b),
                             den);
            break;
        }
        case BaseIndicator::dep: {
            if (citers.empty()) return na(flag::empty_denominator);
            std::uint64_t links = 0;
            for (const auto& c : citers) links += coupled(c).size();
            value = Rational(BigInt(links), BigInt(citers.size()));
            break;
        }
        case BaseIndicator::orig_base:
        case BaseIndicator::orig_yc:
        case BaseIndicator::orig_zr: {
            if (citers.empty() || pool.empty()) return na(flag::empty_denominator);
            BigInt x_sum = 0;
            for (const auto& c : citers)
                for (const auto& r : pool)
                    if (corpus.cites(c, r)) ++x_sum;
            if (config.base == BaseIndicator::orig_base) {
                value = Rational(1) -
                        Rational(x_sum, BigInt(citers.size()) * BigInt(pool.size()));
            } else {
                BigInt sum_y = 0;
                for (const auto& c : citers) sum_y += BigInt(corpus.refs_of(c).size());
                if (sum_y == 0) return na(flag::empty_denominator);
                if (config.base == BaseIndicator::orig_yc) {
                    value = Rational(1) - config.scale_l / BigInt(pool.size()) *
                                              Rational(x_sum, sum_y);
                } else {
                    BigInt sum_z = 0;
                    for (const auto& r : pool) {
                        std::uint64_t count = 0;
                        for (const auto& q : all)
                            if (q != r && corpus.cites(q, r) &&
                                corpus.windowed(q, config.window, fp_year))
                                ++count;
                        sum_z += count;
                    }
                    if (sum_z == 0) return na(flag::empty_denominator);
                    value = Rational(1) - config.scale_l * Rational(x_sum, sum_y * sum_z);
                }
            }
            break;
        }
        case BaseIndicator::dual_dc: {
            Rational sum_d = 0, sum_c = 0;
            std::uint64_t kept = 0;
            for (const auto& r : pool) {
                std::uint64_t b_i = 0;
                for (const auto& c : citers)
                    if (corpus.cites(c, r)) ++b_i;
                const std::uint64_t f_i = citers.size() - b_i;
                std::uint64_t p_i = 0;
                for (const auto& q : all) {
                    if (q == fp || !corpus.cites(q, r)) continue;
                    if (std::find(all_windowed_citers.begin(), all_windowed_citers.end(),
                                  q) != all_windowed_citers.end())
                        continue;
                    if (corpus.windowed(q, config.window, fp_year)) ++p_i;
                }
                const BigInt den = BigInt(f_i) + BigInt(b_i) + BigInt(p_i);
                if (den == 0) continue;
                sum_d += Rational(BigInt(f_i), den);
                sum_c += Rational(BigInt(b_i), den);
                ++kept;
            }
            if (kept == 0) return na(flag::no_priors_retained);
            value = sum_d / BigInt(kept);
            break;
        }
        case BaseIndicator::ed: {
            auto fp_raw = corpus.element_set(fp);
            if (fp_raw.empty()) return na(flag::missing_focal_elements);
            auto fp_elems = pair_transform(fp_raw, config.mode);
            if (fp_elems.empty()) return na(flag::empty_denominator);

            std::set<std::string> ref_elems;
            for (const auto& r : pool)
                for (const auto& e : pair_transform(corpus.element_set(r), config.mode))
                    ref_elems.insert(e);

            std::uint64_t n_rf = 0;
            for (const auto& e : fp_elems)
                if (!ref_elems.count(e)) ++n_rf;
            const std::uint64_t n_rb = fp_elems.size() - n_rf;
            const Rational ed_r(BigInt(n_rf) - BigInt(n_rb), BigInt(n_rf + n_rb));

            Rational sum = 0;
            std::uint64_t kept = 0;
            for (const auto& c : citers) {
                auto craw = corpus.element_set(c);
                if (craw.empty()) continue;
                auto celems = pair_transform(craw, config.mode);
                if (celems.empty()) continue;
                BigInt cf = 0, ca = 0, cr = 0, cc = 0;
                for (const auto& e : celems) {
                    const bool f = fp_elems.count(e) > 0, r = ref_elems.count(e) > 0;
                    if (f && !r) ++cf;
                    else if (f && r) ++ca;
                    else if (r) ++cr;
                    else ++cc;
                }
                sum += Rational(cf + cc - ca - cr, cf + ca + cr + cc);
                ++kept;
            }
            if (kept == 0) return na(flag::empty_denominator);
            const Rational ed_c = sum / BigInt(kept);
            Rational ed_total =
                config.alpha * ed_r + (Rational(1) - config.alpha) * ed_c;

            if (config.m_weight) {
                if (!fp_year) return na(flag::missing_cohort_year);
                std::optional<std::uint64_t> lo, hi;
                for (const auto& p : all) {
                    if (corpus.year(p) != fp_year) continue;
                    if (corpus.element_set(p).empty()) continue;
                    const std::uint64_t n_s =
                        naive_shared_citers(corpus, p, config.window, config.mode);
                    lo = lo ? std::min(*lo, n_s) : n_s;
                    hi = hi ? std::max(*hi, n_s) : n_s;
                }
                const std::uint64_t own_ns =
                    naive_shared_citers(corpus, fp, config.window, config.mode);
                Rational m_t = 0;
                if (lo && hi && *hi > *lo)
                    m_t = Rational(BigInt(own_ns) - BigInt(*lo), BigInt(*hi) - BigInt(*lo));
                else
                    result.warnings.emplace_back(flag::degenerate_cohort);
                ed_total = m_t * ed_total;
            }
            value = ed_total;
            break;
        }
    }

    // m_t/n_t weighting for the citation-based bases.
    if (config.m_weight && config.base != BaseIndicator::ed && value) {
        std::uint64_t m_t = retained;
        if (!fb_base) m_t = citers.size();
        const std::uint64_t n_t = m_t + group_r;
        if (n_t == 0) return na(flag::empty_denominator);
        value = *value * Rational(BigInt(m_t), BigInt(n_t));
    }

    result.value = value;
    return result;
}

RawEdgeList random_graph(std::uint64_t seed, std::uint32_t n_papers, double avg_refs,
                         std::pair<int, int> year_span, std::uint32_t element_vocab) {
    if (n_papers < 2) throw UsageError("random_graph needs at least two papers");
    if (year_span.second < year_span.first)
        throw UsageError("random_graph year span is inverted");
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return bound ? rng() % bound : 0; };

    RawEdgeList raw;
    std::vector<std::string> ids(n_papers);
    std::vector<int> years(n_papers);
    const std::uint64_t span =
        static_cast<std::uint64_t>(year_span.second - year_span.first) + 1;
    for (std::uint32_t i = 0; i < n_papers; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "P%06u", i + 1);
        ids[i] = buf;
        years[i] = year_span.first + static_cast<int>(draw(span));
        raw.years[ids[i]] = years[i];
        raw.journals[ids[i]] = "J" + std::to_string(draw(4));
        if (element_vocab > 0) {
            const std::uint64_t k = 1 + draw(5);
            std::set<std::string> elems;
            for (std::uint64_t e = 0; e < k; ++e) {
                char ebuf[16];
                std::snprintf(ebuf, sizeof ebuf, "e%03u",
                              static_cast<unsigned>(draw(element_vocab)));
                elems.insert(ebuf);
            }
            raw.elements[ids[i]] = {elems.begin(), elems.end()};
        }
    }

    // Candidates for paper i: strictly earlier years, or same year with a
    // smaller index. Later ids can cite same-year earlier ids, never the
    // reverse, so the citation order is acyclic.
    std::vector<std::uint32_t> order(n_papers);
    for (std::uint32_t i = 0; i < n_papers; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (years[a] != years[b]) return years[a] < years[b];
        return a < b;
    });
    std::vector<std::uint32_t> position(n_papers);
    for (std::uint32_t p = 0; p < n_papers; ++p) position[order[p]] = p;

    const std::uint64_t max_refs =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(2.0 * avg_refs + 0.5));
    for (std::uint32_t i = 0; i < n_papers; ++i) {
        const std::uint32_t prefix = position[i];
        if (prefix == 0) continue;
        const std::uint64_t want = draw(max_refs + 1);
        std::set<std::uint32_t> chosen;
        for (std::uint64_t attempt = 0; attempt < want * 3 && chosen.size() < want;
             ++attempt)
            chosen.insert(order[draw(prefix)]);
        for (std::uint32_t target : chosen)
            raw.edges.emplace_back(ids[i], ids[target]);
    }
    return raw;
}

CitationGraph to_graph(const RawEdgeList& raw) {
    std::vector<PaperRecord> records;
    for (const auto& id : raw.all_papers()) {
        PaperRecord rec;
        rec.id = id;
        if (auto it = raw.years.find(id); it != raw.years.end()) rec.year = it->second;
        if (auto it = raw.journals.find(id); it != raw.journals.end())
            rec.journal = it->second;
        if (auto it = raw.elements.find(id); it != raw.elements.end()) {
            std::vector<std::string> elems = it->second;
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
            rec.elements = std::move(elems);
        }
        records.push_back(std::move(rec));
    }
    return CitationGraph::from_data(std::move(records), raw.edges);
}

std::string to_node_jsonl(const RawEdgeList& raw) {
    std::string out;
    for (const auto& id : raw.all_papers()) {
        nlohmann::ordered_json obj;
        obj["id"] = id;
        if (auto it = raw.years.find(id); it != raw.years.end() && it->second)
            obj["year"] = *it->second;
        else
            obj["year"] = nullptr;
        if (auto it = raw.journals.find(id); it != raw.journals.end())
            obj["journal"] = it->second;
        else
            obj["journal"] = nullptr;
        if (auto it = raw.elements.find(id); it != raw.elements.end())
            obj["elements"] = it->second;
        else
            obj["elements"] = nullptr;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

std::string to_edge_csv(const RawEdgeList& raw) {
    std::string out = "citing_id,cited_id\n";
    for (const auto& [citing, cited] : raw.edges) {
        out += citing;
        out += ',';
        out += cited;
        out += '\n';
    }
    return out;
}

}  // namespace oracle
}  // namespace disruptkit
