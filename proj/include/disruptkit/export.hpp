#pragma once
// Machine-readable outputs: the score CSV contract and the run manifest
// emitted alongside every output file. Byte-stable for identical inputs and
// flags; the timestamp lives only in the manifest.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "disruptkit/corpus.hpp"

namespace disruptkit {

inline constexpr const char* kToolVersion = "disruptkit 0.1.0";

// Columns: fp_id,indicator,window,value,n_f,n_b,n_r,t_r,c,r,m_t,n_t,warnings.
// Values are 12-significant-digit decimals, counts plain integers, absent
// components empty, not-computable rendered as NA with the reason among the
// warnings (joined by ';').
void export_scores(const std::vector<ScoreRecord>& records, std::ostream& sink);

std::string csv_field(const std::string& raw);  // minimal RFC 4180 quoting

nlohmann::ordered_json config_to_json(const IndicatorConfig& config);

struct RunManifest {
    std::string command;
    nlohmann::ordered_json config;
    std::vector<std::pair<std::string, std::string>> inputs;  // name -> digest
    std::uint64_t rows = 0;
    std::map<std::string, std::uint64_t> warning_totals;
    nlohmann::ordered_json extra;  // command-specific metadata (cuts, samples)

    nlohmann::ordered_json to_json(bool with_timestamp = true) const;
};

// "fnv1a:<16 hex digits>" over the file bytes. Throws DataError if unreadable.
std::string file_digest(const std::string& path);

void count_warnings(const std::vector<ScoreRecord>& records,
                    std::map<std::string, std::uint64_t>& totals);

}  // namespace disruptkit
