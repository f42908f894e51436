#pragma once

#include <iosfwd>
#include <string>

#include "markhash/simulate.hpp"

// Command entry points behind the command-line tool.  Exit status contract:
// 0 success, 1 check failure, 2 usage or input errors.
namespace markhash::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct DedupOptions {
    std::string input_path;
    std::string output_path;  // empty: stdout
    bool json = false;
    int threads = 1;
};

// Parses a graph file, deduplicates, and writes the report (TSV by default,
// a single JSON document with --json).
int cmd_dedup(const DedupOptions& opt, std::ostream& out, std::ostream& err);

// Prints the validity set over which the two files' single graphs have
// identical summaries.
int cmd_equal(const std::string& path_a, const std::string& path_b, std::ostream& out,
              std::ostream& err);

struct SimulateOptions {
    SimParams params;
    std::string output_path;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

// Golden-vector checks plus a reduced self-contained equivalence suite.
int cmd_selftest(const std::string& data_dir, std::ostream& out);

}  // namespace markhash::cli
