#include "disruptkit/export.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

namespace disruptkit {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string component_cell(const ScoreRecord& rec, const char* name) {
    const Rational* v = rec.component(name);
    return v ? format_component(*v) : std::string();
}

std::string warnings_cell(const std::vector<std::string>& warnings) {
    std::string joined;
    for (const auto& w : warnings) {
        if (!joined.empty()) joined += ';';
        joined += w;
    }
    return joined;
}

}  // namespace

void export_scores(const std::vector<ScoreRecord>& records, std::ostream& sink) {
    sink << "fp_id,indicator,window,value,n_f,n_b,n_r,t_r,c,r,m_t,n_t,warnings\n";
    for (const auto& rec : records) {
        sink << csv_field(rec.fp) << ',' << to_string(rec.config.base) << ','
             << rec.config.window.to_string() << ',';
        sink << (rec.value ? format_decimal(*rec.value) : std::string("NA"));
        for (const char* name : {"n_f", "n_b", "n_r", "t_r", "c", "r", "m_t", "n_t"})
            sink << ',' << component_cell(rec, name);
        sink << ',' << csv_field(warnings_cell(rec.warnings)) << '\n';
    }
    if (!sink) throw DataError("failed to write score records");
}

nlohmann::ordered_json config_to_json(const IndicatorConfig& config) {
    nlohmann::ordered_json j;
    j["indicator"] = to_string(config.base);
    j["window"] = config.window.to_string();
    if (config.l_threshold) {
        j["l"] = *config.l_threshold;
        j["l_semantics"] = to_string(config.l_semantics);
    }
    j["x_percent"] = format_component(config.x_percent);
    j["field_pool"] = config.field_pool;
    j["m_weight"] = config.m_weight;
    if (config.base == BaseIndicator::ed) {
        j["alpha"] = format_component(config.alpha);
        j["mode"] = to_string(config.mode);
    }
    if (config.base == BaseIndicator::orig_yc || config.base == BaseIndicator::orig_zr)
        j["scale_l"] = format_component(config.scale_l);
    return j;
}

nlohmann::ordered_json RunManifest::to_json(bool with_timestamp) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    if (!config.is_null()) j["config"] = config;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [name, digest] : inputs) in[name] = digest;
    j["inputs"] = in;
    j["rows"] = rows;
    nlohmann::ordered_json warn = nlohmann::ordered_json::object();
    for (const auto& [name, count] : warning_totals) warn[name] = count;
    j["warning_totals"] = warn;
    if (!extra.is_null()) j["metadata"] = extra;
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&tt, &tm_utc);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        j["timestamp_utc"] = buf;
    }
    return j;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read input for digest: " + path);
    Fnv1a64 hash;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        hash.update(buf, static_cast<std::size_t>(in.gcount()));
    }
    char hex[24];
    std::snprintf(hex, sizeof hex, "fnv1a:%016llx",
                  static_cast<unsigned long long>(hash.digest()));
    return hex;
}

void count_warnings(const std::vector<ScoreRecord>& records,
                    std::map<std::string, std::uint64_t>& totals) {
    for (const auto& rec : records)
        for (const auto& w : rec.warnings) ++totals[w];
}

}  // namespace disruptkit
