#pragma once
// Knowledge-element disruption: ED_R, ED_C, ED, the cohort-normalized m_t,
// and mED, in entity and relation modes.

#include <map>
#include <optional>
#include <utility>

#include "disruptkit/focal.hpp"
#include "disruptkit/rational.hpp"

namespace disruptkit {

struct EDScore {
    Rational ed_r;  // (n_RF - n_RB) / (n_RF + n_RB)
    Rational ed_c;  // mean citer term
    Rational ed;    // alpha*ed_r + (1-alpha)*ed_c
    Rational alpha;
    ElementMode mode = ElementMode::entity;
    std::uint64_t retained_citers = 0;
    std::vector<std::string> warnings;
};

// Per publication year: extrema of N_S over all element-bearing papers.
struct CohortStats {
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> extrema;  // year -> (min, max)
};

// Not-computable when fp has no elements after the mode transform or when no
// citer retains a positive partition total.
std::optional<EDScore> ed(const EntityNetwork& enet, const Rational& alpha);

// N_S for one paper: windowed citers sharing >= 1 mode-transformed element.
std::uint64_t shared_element_citers(const CitationGraph& graph, NodeIdx paper,
                                    const Window& window, ElementMode mode);

// Extrema of N_S per publication year over every paper with elements and a
// year. Years with no eligible papers are absent.
CohortStats cohort_stats(const CitationGraph& graph, const Window& window,
                         ElementMode mode);

struct MedScore {
    Rational m_t;  // (N_S - min_y) / (max_y - min_y), in [0, 1]
    Rational med;  // m_t * ed
    std::uint64_t n_s = 0;
    std::vector<std::string> warnings;
};

// Throws DataError when the focal year is absent from `stats`. A degenerate
// cohort (max == min) yields m_t = 0 with a warning.
MedScore med(const CitationGraph& graph, const EntityNetwork& enet,
             const EDScore& score, const Window& window, const CohortStats& stats);

}  // namespace disruptkit
