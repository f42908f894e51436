#include "markhash/graph_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace markhash {

namespace {

std::string at_line(std::size_t line_no, const std::string& what) {
    return "line " + std::to_string(line_no) + ": " + what;
}

bool parse_marker(const std::string& tok, Marker& out) {
    if (tok == "-inf") {
        out = kMarkerNegInf;
        return true;
    }
    if (tok == "inf" || tok == "+inf") {
        out = kMarkerPosInf;
        return true;
    }
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end != tok.c_str() + tok.size() || tok.empty()) return false;
    out = v;
    return true;
}

}  // namespace

GraphParseError::GraphParseError(std::size_t line_no, const std::string& what)
    : std::runtime_error(at_line(line_no, what)), line(line_no) {}

std::vector<IBDGraph> read_graphs(std::istream& in, std::vector<std::string>* warnings) {
    std::vector<IBDGraph> graphs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty() || tok[0][0] == '#') continue;

        if (tok[0] == "graph") {
            if (tok.size() != 2) throw GraphParseError(line_no, "expected: graph <id>");
            graphs.push_back(IBDGraph{tok[1], {}});
        } else if (tok[0] == "node") {
            if (tok.size() != 2) throw GraphParseError(line_no, "expected: node <label>");
            if (graphs.empty()) throw GraphParseError(line_no, "node before any graph");
            graphs.back().nodes.push_back(GraphNode{tok[1], {}});
        } else if (tok[0] == "edge") {
            if (tok.size() != 4)
                throw GraphParseError(line_no, "expected: edge <label> <lo> <hi>");
            if (graphs.empty() || graphs.back().nodes.empty())
                throw GraphParseError(line_no, "edge before any node");
            Marker lo, hi;
            if (!parse_marker(tok[2], lo))
                throw GraphParseError(line_no, "bad marker '" + tok[2] + "'");
            if (!parse_marker(tok[3], hi))
                throw GraphParseError(line_no, "bad marker '" + tok[3] + "'");
            if (lo >= hi)
                throw GraphParseError(line_no, "empty interval [" + tok[2] + ", " + tok[3] + ")");
            GraphNode& node = graphs.back().nodes.back();
            bool merged = false;
            for (EdgeAttachment& att : node.edges) {
                if (att.edge == tok[1]) {
                    // Disjoint repeats are how multi-interval attachments are
                    // written; only an overlapping re-statement is suspect.
                    if (warnings && !intersection_of(att.when, ValiditySet(lo, hi)).empty())
                        warnings->push_back(at_line(
                            line_no, "overlapping interval for edge '" + tok[1] +
                                         "' on node '" + node.label + "' of graph '" +
                                         graphs.back().id + "'; intervals merged"));
                    att.when.add(lo, hi);
                    merged = true;
                    break;
                }
            }
            if (!merged)
                node.edges.push_back(EdgeAttachment{tok[1], ValiditySet(lo, hi)});
        } else {
            throw GraphParseError(line_no, "unknown directive '" + tok[0] + "'");
        }
    }
    return graphs;
}

std::vector<IBDGraph> load_graph_file(const std::string& path,
                                      std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graphs(in, warnings);
}

void write_graphs(std::ostream& out, std::span<const IBDGraph> graphs) {
    bool first = true;
    for (const IBDGraph& g : graphs) {
        if (!first) out << '\n';
        first = false;
        out << "graph " << g.id << '\n';
        for (const GraphNode& node : g.nodes) {
            out << "node " << node.label << '\n';
            for (const EdgeAttachment& att : node.edges)
                for (const MarkerInterval& iv : att.when.intervals())
                    out << "edge " << att.edge << ' ' << marker_to_string(iv.lo) << ' '
                        << marker_to_string(iv.hi) << '\n';
        }
    }
}

void save_graph_file(const std::string& path, std::span<const IBDGraph> graphs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_graphs(out, graphs);
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

}  // namespace markhash
