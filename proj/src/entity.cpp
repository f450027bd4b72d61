#include "disruptkit/entity.hpp"

#include <algorithm>

namespace disruptkit {

std::optional<EDScore> ed(const EntityNetwork& enet, const Rational& alpha) {
    if (enet.n_rf + enet.n_rb == 0) return std::nullopt;

    EDScore score;
    score.alpha = alpha;
    score.mode = enet.mode;
    score.ed_r = Rational(BigInt(enet.n_rf) - BigInt(enet.n_rb),
                          BigInt(enet.n_rf + enet.n_rb));

    Rational sum = 0;
    std::uint64_t retained = 0;
    bool skipped = false;
    for (const auto& part : enet.citer_partitions) {
        const std::uint64_t total = part.total();
        if (total == 0) {
            skipped = true;
            continue;
        }
        BigInt num = BigInt(part.n_cf) + BigInt(part.n_cc) - BigInt(part.n_ca) -
                     BigInt(part.n_cr);
        sum += Rational(num, BigInt(total));
        ++retained;
    }
    if (retained == 0) return std::nullopt;
    if (skipped) score.warnings.emplace_back(flag::zero_partition_citers_skipped);
    score.ed_c = sum / BigInt(retained);
    score.retained_citers = retained;
    score.ed = alpha * score.ed_r + (Rational(1) - alpha) * score.ed_c;
    return score;
}

std::uint64_t shared_element_citers(const CitationGraph& graph, NodeIdx paper,
                                    const Window& window, ElementMode mode) {
    const PaperRecord& rec = graph.record(paper);
    if (!rec.elements || rec.elements->empty()) return 0;
    const auto own = transform_elements(*rec.elements, mode);
    if (own.empty()) return 0;

    std::uint64_t n = 0;
    for (NodeIdx citer : graph.in_edges(paper)) {
        const PaperRecord& crec = graph.record(citer);
        if (!crec.year && window.mode != Window::Mode::unbounded) continue;
        if (!window.passes(crec.year, rec.year)) continue;
        if (!crec.elements || crec.elements->empty()) continue;
        bool shares = false;
        for (const auto& e : transform_elements(*crec.elements, mode))
            if (std::binary_search(own.begin(), own.end(), e)) {
                shares = true;
                break;
            }
        if (shares) ++n;
    }
    return n;
}

CohortStats cohort_stats(const CitationGraph& graph, const Window& window,
                         ElementMode mode) {
    CohortStats stats;
    for (NodeIdx p = 0; p < graph.size(); ++p) {
        const PaperRecord& rec = graph.record(p);
        if (!rec.year || !rec.elements || rec.elements->empty()) continue;
        std::uint64_t n_s = shared_element_citers(graph, p, window, mode);
        auto [it, inserted] = stats.extrema.try_emplace(*rec.year, n_s, n_s);
        if (!inserted) {
            it->second.first = std::min(it->second.first, n_s);
            it->second.second = std::max(it->second.second, n_s);
        }
    }
    return stats;
}

MedScore med(const CitationGraph& graph, const EntityNetwork& enet,
             const EDScore& score, const Window& window, const CohortStats& stats) {
    const PaperRecord& rec = graph.record(enet.fp);
    if (!rec.year) throw DataError("paper " + rec.id + " has no year; mED undefined");
    auto it = stats.extrema.find(*rec.year);
    if (it == stats.extrema.end())
        throw DataError("cohort year " + std::to_string(*rec.year) +
                        " absent from cohort statistics");

    MedScore out;
    out.n_s = shared_element_citers(graph, enet.fp, window, enet.mode);
    const auto [lo, hi] = it->second;
    if (hi > lo) {
        out.m_t = Rational(BigInt(out.n_s) - BigInt(lo), BigInt(hi) - BigInt(lo));
    } else {
        out.m_t = 0;
        out.warnings.emplace_back(flag::degenerate_cohort);
    }
    out.med = out.m_t * score.ed;
    return out;
}

}  // namespace disruptkit
