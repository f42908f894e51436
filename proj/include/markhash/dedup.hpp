#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "markhash/ibd_graph.hpp"

namespace markhash {

struct DedupReport {
    // Sum over graphs of the number of maximal constant-summary intervals:
    // how many configurations a per-configuration algorithm would process.
    std::uint64_t total_configurations = 0;
    std::uint64_t unique_graphs = 0;  // == records.size()
    double elapsed_seconds = 0.0;
    std::vector<UniqueGraphRecord> records;
    std::vector<std::string> graph_ids;  // parallel to the input graphs

    // total_configurations / unique_graphs, the work avoided by hashing.
    // Exact as a rational (numerator/denominator are the two fields above).
    double speedup_factor() const {
        return unique_graphs == 0 ? 0.0
                                  : static_cast<double>(total_configurations) /
                                        static_cast<double>(unique_graphs);
    }
};

// Summarizes every graph (split across `threads` workers when > 1; the
// result does not depend on the thread count) and extracts the distinct
// configurations.
DedupReport dedup_graphs(std::span<const IBDGraph> graphs, int threads = 1);

}  // namespace markhash
