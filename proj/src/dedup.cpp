#include "markhash/dedup.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace markhash {

DedupReport dedup_graphs(std::span<const IBDGraph> graphs, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = graphs.size();
    std::vector<GraphSummary> summaries(n);

    const int workers =
        std::max(1, std::min<int>(threads, static_cast<int>(n == 0 ? 1 : n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) summaries[i] = summarize_graph(graphs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;)
                summaries[i] = summarize_graph(graphs[i]);
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    DedupReport report;
    for (const GraphSummary& s : summaries)
        report.total_configurations += s.summary.pieces().size();
    report.records = unique_elements(summaries);
    report.unique_graphs = report.records.size();
    report.graph_ids.reserve(n);
    for (const IBDGraph& g : graphs) report.graph_ids.push_back(g.id);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace markhash
