#include "markhash/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "markhash/dedup.hpp"
#include "markhash/graph_io.hpp"

namespace markhash::cli {

namespace {

int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(out);
        return kExitOk;
    }
    std::ofstream f(path);
    if (!f) {
        err << "error: cannot open output file: " << path << '\n';
        return kExitUsage;
    }
    write(f);
    if (!f.flush()) {
        err << "error: failed writing " << path << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

void write_tsv(std::ostream& os, const DedupReport& r) {
    os << "# total_configurations\t" << r.total_configurations << '\n';
    os << "# unique_graphs\t" << r.unique_graphs << '\n';
    os << "# speedup_factor\t" << r.speedup_factor() << '\n';
    os << "# elapsed_seconds\t" << r.elapsed_seconds << '\n';
    for (const UniqueGraphRecord& rec : r.records)
        os << rec.hash.to_hex() << '\t' << r.graph_ids[rec.graph_index - 1] << '\t'
           << marker_to_string(rec.marker) << '\n';
}

void write_json(std::ostream& os, const DedupReport& r) {
    nlohmann::json j;
    j["total_configurations"] = r.total_configurations;
    j["unique_graphs"] = r.unique_graphs;
    j["speedup_factor"] = r.speedup_factor();
    j["elapsed_seconds"] = r.elapsed_seconds;
    auto& records = j["records"] = nlohmann::json::array();
    for (const UniqueGraphRecord& rec : r.records) {
        records.push_back({{"hash", rec.hash.to_hex()},
                           {"graph", r.graph_ids[rec.graph_index - 1]},
                           {"marker", marker_to_string(rec.marker)}});
    }
    os << j.dump(2) << '\n';
}

}  // namespace

int cmd_dedup(const DedupOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<std::string> warnings;
    std::vector<IBDGraph> graphs;
    try {
        graphs = load_graph_file(opt.input_path, &warnings);
    } catch (const std::exception& e) {
        err << "error: " << opt.input_path << ": " << e.what() << '\n';
        return kExitUsage;
    }
    for (const std::string& w : warnings) err << "warning: " << opt.input_path << ": " << w << '\n';

    const DedupReport report = dedup_graphs(graphs, opt.threads);

    // Report invariants; a violation means the pipeline itself misbehaved.
    const bool sane = report.unique_graphs == report.records.size() &&
                      report.unique_graphs <= report.total_configurations &&
                      (report.unique_graphs == 0) == (report.total_configurations == 0);
    if (!sane) {
        err << "error: inconsistent dedup report\n";
        return kExitCheckFailed;
    }
    return with_output(opt.output_path, out, err,
                       [&](std::ostream& os) { (opt.json ? write_json : write_tsv)(os, report); });
}

int cmd_equal(const std::string& path_a, const std::string& path_b, std::ostream& out,
              std::ostream& err) {
    GraphSummary sums[2];
    const std::string* paths[2] = {&path_a, &path_b};
    for (int i = 0; i < 2; ++i) {
        std::vector<IBDGraph> graphs;
        try {
            graphs = load_graph_file(*paths[i]);
        } catch (const std::exception& e) {
            err << "error: " << *paths[i] << ": " << e.what() << '\n';
            return kExitUsage;
        }
        if (graphs.size() != 1) {
            err << "error: " << *paths[i] << ": expected exactly one graph, found "
                << graphs.size() << '\n';
            return kExitUsage;
        }
        sums[i] = summarize_graph(graphs[0]);
    }
    out << equality_vset(sums[0].summary, sums[1].summary).to_string() << '\n';
    return kExitOk;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream&, std::ostream& err) {
    std::vector<IBDGraph> graphs;
    try {
        graphs = simulate_descent(opt.params);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        save_graph_file(opt.output_path, graphs);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace markhash::cli
