#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "markhash/ibd_graph.hpp"

namespace markhash {

// Graph file grammar, one directive per line:
//   graph <id>                 starts a new graph
//   node <label>               starts a new node in the current graph
//   edge <label> <lo> <hi>     attaches an edge to the current node over
//                              [lo, hi); bounds are integers or -inf / inf
// Blank lines and lines starting with '#' are ignored.  Tokens are
// whitespace-separated.

struct GraphParseError : std::runtime_error {
    GraphParseError(std::size_t line_no, const std::string& what);
    std::size_t line;
};

// Duplicate edge attachments on a node union their intervals and append a
// warning ("line N: ...") when `warnings` is given.
std::vector<IBDGraph> read_graphs(std::istream& in, std::vector<std::string>* warnings = nullptr);
std::vector<IBDGraph> load_graph_file(const std::string& path,
                                      std::vector<std::string>* warnings = nullptr);

void write_graphs(std::ostream& out, std::span<const IBDGraph> graphs);
void save_graph_file(const std::string& path, std::span<const IBDGraph> graphs);

}  // namespace markhash
