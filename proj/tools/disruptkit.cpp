// disruptkit CLI: ingest, compute, trajectory, classify, rank, validate.
//
// Exit codes: 0 success, 1 data error, 2 usage error. Diagnostics go to
// stderr; data goes to stdout or the --out file. Every --out file is
// accompanied by <out>.manifest.json (identical across reruns except for the
// timestamp).

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "disruptkit/corpus.hpp"
#include "disruptkit/export.hpp"
#include "disruptkit/oracle.hpp"

namespace dk = disruptkit;

namespace {

dk::CitationGraph load_cache_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dk::DataError("cannot open graph cache: " + path);
    return dk::load_cached(in);
}

std::vector<std::string> read_id_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dk::DataError("cannot open focal id file: " + path);
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        std::string id = dk::trim(line);
        if (!id.empty()) ids.push_back(std::move(id));
    }
    return ids;
}

void write_output(const std::optional<std::string>& out_path, const std::string& data,
                  dk::RunManifest manifest) {
    if (!out_path) {
        std::cout << data;
        return;
    }
    {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw dk::DataError("cannot write output file: " + *out_path);
        out << data;
    }
    std::ofstream mf(*out_path + ".manifest.json");
    if (!mf) throw dk::DataError("cannot write manifest for: " + *out_path);
    mf << manifest.to_json().dump(2) << '\n';
}

// Shared indicator flags, mirroring IndicatorConfig one-to-one.
struct IndicatorFlags {
    std::string indicator = "di1";
    std::string window = "unbounded";
    int l_threshold = 0;  // 0 = absent
    std::string l_semantics = "reclassify";
    std::string x_percent = "0";
    bool field_pool = false;
    bool m_weight = false;
    std::string alpha = "0.5";
    std::string scale_l = "1";
    std::string mode = "entity";

    void attach(CLI::App* cmd, bool with_indicator = true) {
        if (with_indicator)
            cmd->add_option("--indicator", indicator,
                            "di1|di_nor|di_star|di_hash|dep|orig_base|orig_yc|orig_zr|"
                            "dual_dc|ed");
        cmd->add_option("--window", window, "citation window: N years, unbounded, abs:YYYY");
        cmd->add_option("--l", l_threshold, "coupling threshold (>= 2)");
        cmd->add_option("--l-semantics", l_semantics, "reclassify|exclude");
        cmd->add_option("--x-percent", x_percent, "exclude the X% most cited references");
        cmd->add_flag("--field-pool", field_pool, "same-journal same-year reference pool");
        cmd->add_flag("--m-weight", m_weight, "apply the m_t weighting");
        cmd->add_option("--alpha", alpha, "ED mixing weight in [0,1]");
        cmd->add_option("--scale-l", scale_l, "weighted-originality scale L > 0");
        cmd->add_option("--mode", mode, "knowledge-element mode: entity|relation");
    }

    dk::IndicatorConfig to_config() const {
        dk::IndicatorConfig config;
        config.base = dk::parse_base_indicator(indicator);
        config.window = dk::Window::parse(window);
        if (l_threshold != 0) config.l_threshold = l_threshold;
        config.l_semantics = dk::parse_threshold_semantics(l_semantics);
        config.x_percent = dk::parse_decimal(x_percent);
        config.field_pool = field_pool;
        config.m_weight = m_weight;
        config.alpha = dk::parse_decimal(alpha);
        config.scale_l = dk::parse_decimal(scale_l);
        config.mode = dk::parse_element_mode(mode);
        dk::validate_config(config);
        return config;
    }
};

int default_jobs() {
    if (const char* env = std::getenv("DISRUPTKIT_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            throw dk::UsageError("DISRUPTKIT_JOBS is not a number");
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// --- subcommands -------------------------------------------------------------

int run_ingest(const std::string& nodes_path, const std::string& edges_path,
               const std::string& out_path, bool no_normalize) {
    std::ifstream nodes(nodes_path);
    if (!nodes) throw dk::DataError("cannot open node file: " + nodes_path);
    std::ifstream edges(edges_path);
    if (!edges) throw dk::DataError("cannot open edge file: " + edges_path);
    dk::IngestOptions options;
    options.normalize_elements = !no_normalize;
    dk::CitationGraph graph = dk::load_graph(nodes, edges, options);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw dk::DataError("cannot write graph cache: " + out_path);
        dk::persist_graph(graph, out);
    }
    dk::RunManifest manifest;
    manifest.command = "ingest";
    manifest.inputs = {{"nodes", dk::file_digest(nodes_path)},
                       {"edges", dk::file_digest(edges_path)}};
    manifest.rows = graph.stats().node_count;
    nlohmann::ordered_json meta;
    meta["nodes"] = graph.stats().node_count;
    meta["edges"] = graph.stats().edge_count;
    meta["duplicate_edges"] = graph.stats().duplicate_edges;
    meta["dropped_self_loops"] = graph.stats().dropped_self_loops;
    meta["stub_nodes"] = graph.stats().stub_nodes;
    manifest.extra = meta;
    std::ofstream mf(out_path + ".manifest.json");
    if (!mf) throw dk::DataError("cannot write manifest for: " + out_path);
    mf << manifest.to_json().dump(2) << '\n';
    std::cerr << "ingested " << graph.stats().node_count << " papers, "
              << graph.stats().edge_count << " edges (" << graph.stats().stub_nodes
              << " stubs)\n";
    return 0;
}

std::vector<dk::NodeIdx> resolve_focal_set(const dk::CitationGraph& graph,
                                           const std::string& focal_path, bool eligible,
                                           int min_refs, int min_cites, int min_year,
                                           const dk::Window& window) {
    if (eligible) {
        std::optional<int> year_floor;
        if (min_year != 0) year_floor = min_year;
        return dk::eligibility_filter(graph, min_refs, min_cites, year_floor, window);
    }
    if (focal_path.empty())
        throw dk::UsageError("either --focal FILE or --eligible is required");
    std::vector<dk::NodeIdx> set;
    std::string unknown;
    for (const auto& id : read_id_file(focal_path)) {
        auto idx = graph.find(id);
        if (!idx) {
            if (!unknown.empty()) unknown += ", ";
            unknown += id;
            continue;
        }
        set.push_back(*idx);
    }
    if (!unknown.empty()) throw dk::DataError("unknown paper ids: " + unknown);
    return set;
}

int run_compute(const std::string& graph_path, const std::string& focal_path,
                bool eligible, int min_refs, int min_cites, int min_year,
                const IndicatorFlags& flags, int jobs,
                const std::optional<std::string>& out_path) {
    dk::CitationGraph graph = load_cache_file(graph_path);
    dk::IndicatorConfig config = flags.to_config();
    auto focal =
        resolve_focal_set(graph, focal_path, eligible, min_refs, min_cites, min_year,
                          config.window);
    dk::ComputeContext ctx(graph);
    auto records = dk::batch_compute(ctx, std::move(focal), config, jobs);

    std::ostringstream csv;
    dk::export_scores(records, csv);

    dk::RunManifest manifest;
    manifest.command = "compute";
    manifest.config = dk::config_to_json(config);
    manifest.inputs = {{"graph", dk::file_digest(graph_path)}};
    if (!focal_path.empty())
        manifest.inputs.emplace_back("focal", dk::file_digest(focal_path));
    manifest.rows = records.size();
    dk::count_warnings(records, manifest.warning_totals);
    write_output(out_path, csv.str(), std::move(manifest));
    return 0;
}

int run_trajectory(const std::string& graph_path, const std::string& focal_path,
                   const std::string& single_fp, int max_t, const IndicatorFlags& flags,
                   const std::optional<std::string>& out_path) {
    dk::CitationGraph graph = load_cache_file(graph_path);
    dk::IndicatorConfig config = flags.to_config();
    std::vector<std::string> ids;
    if (!single_fp.empty())
        ids.push_back(single_fp);
    else if (!focal_path.empty())
        ids = read_id_file(focal_path);
    else
        throw dk::UsageError("either --fp ID or --focal FILE is required");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    dk::ComputeContext ctx(graph);
    std::ostringstream csv;
    csv << "fp_id,indicator,t,value,warnings\n";
    std::map<std::string, std::uint64_t> warning_totals;
    std::uint64_t rows = 0;
    for (const auto& id : ids) {
        const dk::NodeIdx fp = graph.require(id);
        if (!graph.record(fp).year) {
            csv << dk::csv_field(id) << ',' << flags.indicator << ",,NA,"
                << dk::flag::missing_focal_year << '\n';
            ++warning_totals[dk::flag::missing_focal_year];
            ++rows;
            continue;
        }
        dk::Trajectory traj = dk::trajectory(ctx, fp, config, max_t);
        for (const auto& point : traj.points) {
            csv << dk::csv_field(id) << ',' << flags.indicator << ',' << point.t << ',';
            csv << (point.value ? dk::format_decimal(*point.value) : std::string("NA"));
            std::string joined;
            for (const auto& w : point.warnings) {
                if (!joined.empty()) joined += ';';
                joined += w;
                ++warning_totals[w];
            }
            csv << ',' << dk::csv_field(joined) << '\n';
            ++rows;
        }
    }

    dk::RunManifest manifest;
    manifest.command = "trajectory";
    manifest.config = dk::config_to_json(config);
    manifest.config["max_t"] = max_t;
    manifest.inputs = {{"graph", dk::file_digest(graph_path)}};
    if (!focal_path.empty())
        manifest.inputs.emplace_back("focal", dk::file_digest(focal_path));
    manifest.rows = rows;
    manifest.warning_totals = warning_totals;
    write_output(out_path, csv.str(), std::move(manifest));
    return 0;
}

int run_classify(const std::string& graph_path, const std::string& focal_path,
                 bool eligible, int min_refs, int min_cites, int min_year,
                 const std::string& scheme, const IndicatorFlags& flags,
                 const std::string& di_cut_text, double logc_cut,
                 const std::string& d_cut_text, const std::string& c_cut_text, int jobs,
                 const std::optional<std::string>& out_path) {
    dk::CitationGraph graph = load_cache_file(graph_path);
    IndicatorFlags base_flags = flags;
    base_flags.indicator = scheme == "chen" ? "dual_dc" : "di1";
    dk::IndicatorConfig config = base_flags.to_config();
    auto focal =
        resolve_focal_set(graph, focal_path, eligible, min_refs, min_cites, min_year,
                          config.window);
    dk::ComputeContext ctx(graph);
    auto records = dk::batch_compute(ctx, std::move(focal), config, jobs);

    std::ostringstream csv;
    std::map<std::string, std::uint64_t> warning_totals;
    dk::count_warnings(records, warning_totals);
    nlohmann::ordered_json meta;

    if (scheme == "wei") {
        const dk::Rational di_cut = dk::parse_decimal(di_cut_text);
        csv << "fp_id,di1,citations,label\n";
        for (const auto& rec : records) {
            const dk::NodeIdx fp = graph.require(rec.fp);
            const std::uint64_t citations = graph.citation_count(
                fp, config.window, graph.record(fp).year);
            csv << dk::csv_field(rec.fp) << ',';
            if (rec.value) {
                csv << dk::format_decimal(*rec.value) << ',' << citations << ','
                    << dk::to_string(dk::wei_classify(*rec.value, citations, di_cut,
                                                      logc_cut));
            } else {
                csv << "NA," << citations << ",NA";
            }
            csv << '\n';
        }
        meta["di_cut"] = dk::format_component(di_cut);
        meta["logc_cut"] = logc_cut;
    } else if (scheme == "chen") {
        std::vector<dk::Rational> ds, cs;
        for (const auto& rec : records)
            if (rec.value) {
                ds.push_back(*rec.component("d"));
                cs.push_back(*rec.component("c_score"));
            }
        dk::Rational d_cut, c_cut;
        if (!d_cut_text.empty())
            d_cut = dk::parse_decimal(d_cut_text);
        else if (!ds.empty())
            d_cut = dk::median(ds);
        if (!c_cut_text.empty())
            c_cut = dk::parse_decimal(c_cut_text);
        else if (!cs.empty())
            c_cut = dk::median(cs);
        csv << "fp_id,d,c,label\n";
        for (const auto& rec : records) {
            csv << dk::csv_field(rec.fp) << ',';
            if (rec.value) {
                const dk::Rational& d = *rec.component("d");
                const dk::Rational& c = *rec.component("c_score");
                csv << dk::format_decimal(d) << ',' << dk::format_decimal(c) << ','
                    << dk::to_string(dk::chen_classify(d, c, d_cut, c_cut));
            } else {
                csv << "NA,NA,NA";
            }
            csv << '\n';
        }
        meta["d_cut"] = dk::format_component(d_cut);
        meta["c_cut"] = dk::format_component(c_cut);
        meta["cut_source"] =
            d_cut_text.empty() || c_cut_text.empty() ? "corpus_median" : "flags";
    } else {
        throw dk::UsageError("unknown scheme: " + scheme + " (expected wei|chen)");
    }

    dk::RunManifest manifest;
    manifest.command = "classify";
    manifest.config = dk::config_to_json(config);
    manifest.config["scheme"] = scheme;
    manifest.inputs = {{"graph", dk::file_digest(graph_path)}};
    if (!focal_path.empty())
        manifest.inputs.emplace_back("focal", dk::file_digest(focal_path));
    manifest.rows = records.size();
    manifest.warning_totals = warning_totals;
    manifest.extra = meta;
    write_output(out_path, csv.str(), std::move(manifest));
    return 0;
}

// Minimal CSV reader for score files produced by `compute`.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

int run_rank(const std::string& scores_path, const std::string& transform,
             const std::optional<std::string>& out_path) {
    std::ifstream in(scores_path);
    if (!in) throw dk::DataError("cannot open scores file: " + scores_path);
    std::string line;
    if (!std::getline(in, line)) throw dk::DataError("scores file is empty");
    auto header = split_csv_line(line);
    std::size_t id_col = header.size(), value_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "fp_id") id_col = i;
        if (header[i] == "value") value_col = i;
    }
    if (id_col == header.size() || value_col == header.size())
        throw dk::DataError("scores file needs fp_id and value columns");

    std::vector<std::pair<std::string, std::optional<dk::Rational>>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (dk::trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() <= std::max(id_col, value_col))
            throw dk::DataError("malformed scores line " + std::to_string(line_no));
        std::optional<dk::Rational> value;
        if (fields[value_col] != "NA") {
            try {
                value = dk::parse_decimal(fields[value_col]);
            } catch (const dk::UsageError&) {
                throw dk::DataError("bad value on scores line " + std::to_string(line_no));
            }
        }
        rows.emplace_back(fields[id_col], value);
    }

    std::vector<dk::Rational> values;
    for (const auto& [id, v] : rows)
        if (v) values.push_back(*v);
    if (values.empty()) throw dk::DataError("no computable scores to rank");

    std::vector<dk::Rational> transformed;
    const char* column = "percentile";
    if (transform == "percentile") {
        transformed = dk::percentile_ranks(values);
    } else if (transform == "inverse-dep") {
        transformed = dk::inverse_dep(values);
        column = "inverse_dep";
    } else {
        throw dk::UsageError("unknown transform: " + transform);
    }

    std::ostringstream csv;
    csv << "fp_id,value," << column << "\n";
    std::size_t k = 0;
    for (const auto& [id, v] : rows) {
        csv << dk::csv_field(id) << ',';
        if (v)
            csv << dk::format_decimal(*v) << ',' << dk::format_decimal(transformed[k++]);
        else
            csv << "NA,NA";
        csv << '\n';
    }

    dk::RunManifest manifest;
    manifest.command = "rank";
    manifest.inputs = {{"scores", dk::file_digest(scores_path)}};
    manifest.rows = rows.size();
    nlohmann::ordered_json meta;
    meta["transform"] = transform;
    meta["sample_size"] = values.size();
    if (transform == "inverse-dep")
        meta["sample_max"] = dk::format_component(
            *std::max_element(values.begin(), values.end()));
    manifest.extra = meta;
    write_output(out_path, csv.str(), std::move(manifest));
    return 0;
}

// --- validate: the paper's worked examples, shipped inside the binary --------

dk::CitationGraph counts_graph(int n_f, int n_b, int n_r) {
    std::vector<dk::PaperRecord> records;
    std::vector<std::pair<std::string, std::string>> edges;
    auto add = [&](const std::string& id, int year) {
        dk::PaperRecord rec;
        rec.id = id;
        rec.year = year;
        records.push_back(rec);
    };
    add("FP", 2000);
    add("R1", 1999);
    edges.emplace_back("FP", "R1");
    char buf[16];
    for (int i = 0; i < n_f; ++i) {
        std::snprintf(buf, sizeof buf, "F%03d", i);
        add(buf, 2001);
        edges.emplace_back(buf, "FP");
    }
    for (int i = 0; i < n_b; ++i) {
        std::snprintf(buf, sizeof buf, "B%03d", i);
        add(buf, 2001);
        edges.emplace_back(buf, "FP");
        edges.emplace_back(buf, "R1");
    }
    for (int i = 0; i < n_r; ++i) {
        std::snprintf(buf, sizeof buf, "X%03d", i);
        add(buf, 2001);
        edges.emplace_back(buf, "R1");
    }
    return dk::CitationGraph::from_data(std::move(records), std::move(edges));
}

dk::CitationGraph coupling_example_graph() {
    // Two citers, three references, four coupling links in total.
    std::vector<dk::PaperRecord> records;
    std::vector<std::pair<std::string, std::string>> edges;
    auto add = [&](const std::string& id, int year) {
        dk::PaperRecord rec;
        rec.id = id;
        rec.year = year;
        records.push_back(rec);
    };
    add("FP", 2000);
    for (const char* r : {"R1", "R2", "R3"}) {
        add(r, 1999);
        edges.emplace_back("FP", r);
    }
    add("C1", 2001);
    for (const char* t : {"FP", "R1", "R2", "R3"}) edges.emplace_back("C1", t);
    add("C2", 2001);
    edges.emplace_back("C2", "FP");
    edges.emplace_back("C2", "R1");
    return dk::CitationGraph::from_data(std::move(records), std::move(edges));
}

int run_validate() {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        if (!ok) ++failures;
    };
    const dk::IndicatorConfig di1_config;  // di1, unbounded

    struct Row {
        const char* name;
        int n_f, n_b, n_r;
        dk::Rational expected;
    };
    const Row rows[] = {
        {"table2_row_A", 90, 10, 0, dk::make_ratio(4, 5)},
        {"table2_row_B", 90, 10, 100, dk::make_ratio(2, 5)},
        {"table2_row_C", 10, 90, 0, dk::make_ratio(-4, 5)},
        {"table2_row_D", 10, 90, 100, dk::make_ratio(-2, 5)},
    };
    for (const Row& row : rows) {
        auto graph = counts_graph(row.n_f, row.n_b, row.n_r);
        auto rec = dk::compute_composite(graph, "FP", di1_config);
        const bool ok = rec.value && *rec.value == row.expected;
        report(row.name, ok,
               "di1 = " + (rec.value ? dk::format_decimal(*rec.value) : "NA") +
                   " (expected " + dk::format_decimal(row.expected) + ")");
    }

    // Leydesdorff example: DI*/DI# disentangle equally disruptive papers.
    struct StarRow {
        const char* name;
        int n_f, n_b, n_r;
        dk::Rational star, hash;
        double star_printed, hash_printed;
    };
    const StarRow star_rows[] = {
        {"leydesdorff_paper_A", 10, 10, 100, dk::make_ratio(1, 12),
         dk::make_ratio(1, 12), 0.083, 0.083},
        {"leydesdorff_paper_B", 10, 100, 10, dk::make_ratio(1, 12),
         dk::make_ratio(5, 6), 0.083, 0.83},
    };
    for (const StarRow& row : star_rows) {
        auto graph = counts_graph(row.n_f, row.n_b, row.n_r);
        dk::IndicatorConfig config;
        config.base = dk::BaseIndicator::di_star;
        auto star = dk::compute_composite(graph, "FP", config);
        config.base = dk::BaseIndicator::di_hash;
        auto hash = dk::compute_composite(graph, "FP", config);
        bool ok = star.value && hash.value && *star.value == row.star &&
                  *hash.value == row.hash;
        // Cross-check against the rounded values the source prints.
        auto printed_match = [](const dk::Rational& v, double printed) {
            const double rounded =
                std::round(dk::to_double(v) * 1000.0) / 1000.0;
            return std::abs(rounded - printed) < 5e-4 ||
                   std::abs(std::round(dk::to_double(v) * 100.0) / 100.0 - printed) <
                       5e-4;
        };
        ok = ok && printed_match(*star.value, row.star_printed) &&
             printed_match(*hash.value, row.hash_printed);
        report(row.name, ok,
               "DI* = " + dk::format_decimal(*star.value) +
                   ", DI# = " + dk::format_decimal(*hash.value));
    }

    {
        auto graph = coupling_example_graph();
        dk::IndicatorConfig config;
        config.base = dk::BaseIndicator::orig_base;
        auto rec = dk::compute_composite(graph, "FP", config);
        const dk::Rational expected = dk::make_ratio(1, 3);
        bool ok = rec.value && *rec.value == expected &&
                  std::abs(dk::to_double(*rec.value) - 0.33) < 5e-3;
        report("originality_example", ok,
               "orig_base = " + (rec.value ? dk::format_decimal(*rec.value) : "NA") +
                   " (prints as 0.33)");

        config.base = dk::BaseIndicator::dep;
        auto dep_rec = dk::compute_composite(graph, "FP", config);
        ok = dep_rec.value && *dep_rec.value == dk::Rational(2);
        report("dependency_example", ok,
               "dep = " + (dep_rec.value ? dk::format_decimal(*dep_rec.value) : "NA") +
                   " (expected 2)");
    }

    std::cout << (failures == 0 ? "all golden vectors PASS\n"
                                : "golden vector failures: " + std::to_string(failures) +
                                      "\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disruption indicators over windowed citation graphs"};
    app.set_version_flag("--version", dk::kToolVersion);
    app.require_subcommand(1);

    std::function<int()> action;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "build a graph cache from node/edge files");
    {
        auto nodes = std::make_shared<std::string>();
        auto edges = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto no_norm = std::make_shared<bool>(false);
        ingest->add_option("--nodes", *nodes, "JSON-lines node file")->required();
        ingest->add_option("--edges", *edges, "CSV edge file")->required();
        ingest->add_option("--out", *out, "output cache path")->required();
        ingest->add_flag("--no-normalize-elements", *no_norm,
                         "keep knowledge elements verbatim");
        ingest->callback([=, &action] {
            action = [=] { return run_ingest(*nodes, *edges, *out, *no_norm); };
        });
    }

    // compute
    auto* compute = app.add_subcommand("compute", "score focal papers");
    {
        auto graph = std::make_shared<std::string>();
        auto focal = std::make_shared<std::string>();
        auto eligible = std::make_shared<bool>(false);
        auto min_refs = std::make_shared<int>(10);
        auto min_cites = std::make_shared<int>(10);
        auto min_year = std::make_shared<int>(0);
        auto flags = std::make_shared<IndicatorFlags>();
        auto jobs = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        compute->add_option("--graph", *graph, "graph cache from ingest")->required();
        compute->add_option("--focal", *focal, "file with one focal id per line");
        compute->add_flag("--eligible", *eligible, "score all eligible papers");
        compute->add_option("--min-refs", *min_refs, "eligibility: minimum references");
        compute->add_option("--min-cites", *min_cites, "eligibility: minimum citations");
        compute->add_option("--min-year", *min_year, "eligibility: minimum year");
        flags->attach(compute);
        compute->add_option("--jobs", *jobs, "worker threads (default: DISRUPTKIT_JOBS)");
        compute->add_option("--out", *out, "output CSV (default stdout)");
        compute->callback([=, &action] {
            action = [=] {
                return run_compute(*graph, *focal, *eligible, *min_refs, *min_cites,
                                   *min_year, *flags, *jobs > 0 ? *jobs : default_jobs(),
                                   out->empty() ? std::nullopt
                                                : std::optional<std::string>(*out));
            };
        });
    }

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "score across growing windows");
    {
        auto graph = std::make_shared<std::string>();
        auto focal = std::make_shared<std::string>();
        auto fp = std::make_shared<std::string>();
        auto max_t = std::make_shared<int>(10);
        auto flags = std::make_shared<IndicatorFlags>();
        auto out = std::make_shared<std::string>();
        traj->add_option("--graph", *graph, "graph cache from ingest")->required();
        traj->add_option("--focal", *focal, "file with one focal id per line");
        traj->add_option("--fp", *fp, "single focal paper id");
        traj->add_option("--max-t", *max_t, "largest relative window (years)");
        flags->attach(traj);
        traj->add_option("--out", *out, "output CSV (default stdout)");
        traj->callback([=, &action] {
            action = [=] {
                return run_trajectory(*graph, *focal, *fp, *max_t, *flags,
                                      out->empty() ? std::nullopt
                                                   : std::optional<std::string>(*out));
            };
        });
    }

    // classify
    auto* classify = app.add_subcommand("classify", "quadrant labels (wei or chen)");
    {
        auto graph = std::make_shared<std::string>();
        auto focal = std::make_shared<std::string>();
        auto eligible = std::make_shared<bool>(false);
        auto min_refs = std::make_shared<int>(10);
        auto min_cites = std::make_shared<int>(10);
        auto min_year = std::make_shared<int>(0);
        auto scheme = std::make_shared<std::string>("wei");
        auto flags = std::make_shared<IndicatorFlags>();
        auto di_cut = std::make_shared<std::string>("0");
        auto logc_cut = std::make_shared<double>(2.0);
        auto d_cut = std::make_shared<std::string>();
        auto c_cut = std::make_shared<std::string>();
        auto jobs = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        classify->add_option("--graph", *graph, "graph cache from ingest")->required();
        classify->add_option("--focal", *focal, "file with one focal id per line");
        classify->add_flag("--eligible", *eligible, "classify all eligible papers");
        classify->add_option("--min-refs", *min_refs, "eligibility: minimum references");
        classify->add_option("--min-cites", *min_cites, "eligibility: minimum citations");
        classify->add_option("--min-year", *min_year, "eligibility: minimum year");
        classify->add_option("--scheme", *scheme, "wei|chen");
        flags->attach(classify, /*with_indicator=*/false);
        classify->add_option("--di-cut", *di_cut, "wei: disruption cut (default 0)");
        classify->add_option("--logc-cut", *logc_cut,
                             "wei: log10(citations+1) cut (default 2.0)");
        classify->add_option("--d-cut", *d_cut, "chen: D cut (default corpus median)");
        classify->add_option("--c-cut", *c_cut, "chen: C cut (default corpus median)");
        classify->add_option("--jobs", *jobs, "worker threads");
        classify->add_option("--out", *out, "output CSV (default stdout)");
        classify->callback([=, &action] {
            action = [=] {
                return run_classify(*graph, *focal, *eligible, *min_refs, *min_cites,
                                    *min_year, *scheme, *flags, *di_cut, *logc_cut,
                                    *d_cut, *c_cut, *jobs > 0 ? *jobs : default_jobs(),
                                    out->empty() ? std::nullopt
                                                 : std::optional<std::string>(*out));
            };
        });
    }

    // rank
    auto* rank = app.add_subcommand("rank", "percentile ranks or inverse DEP");
    {
        auto scores = std::make_shared<std::string>();
        auto transform = std::make_shared<std::string>("percentile");
        auto out = std::make_shared<std::string>();
        rank->add_option("--scores", *scores, "CSV produced by compute")->required();
        rank->add_option("--transform", *transform, "percentile|inverse-dep");
        rank->add_option("--out", *out, "output CSV (default stdout)");
        rank->callback([=, &action] {
            action = [=] {
                return run_rank(*scores, *transform,
                                out->empty() ? std::nullopt
                                             : std::optional<std::string>(*out));
            };
        });
    }

    // validate
    auto* validate = app.add_subcommand("validate", "run the built-in golden vectors");
    validate->callback([&action] { action = [] { return run_validate(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run 'disruptkit --help' for usage\n";
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const dk::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const dk::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
