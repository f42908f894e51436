#pragma once

#include <span>
#include <string>
#include <vector>

#include "markhash/mset.hpp"

namespace markhash {

// An edge label attached to a node over a set of marker positions.
struct EdgeAttachment {
    std::string edge;
    ValiditySet when;
    friend bool operator==(const EdgeAttachment&, const EdgeAttachment&) = default;
};

struct GraphNode {
    std::string label;
    std::vector<EdgeAttachment> edges;
    friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

// A graph whose connectivity varies along the marker axis.  Nodes carry no
// identity of their own; an edge connects the nodes it is attached to.
struct IBDGraph {
    std::string id;
    std::vector<GraphNode> nodes;

    // One M-Set per node, keyed by the hash of each attached edge label.
    std::vector<MSet> node_sets() const;

    friend bool operator==(const IBDGraph&, const IBDGraph&) = default;
};

// The graph's identity: a single M-Set equal at every marker to the
// summarize() of the per-node M-Sets.  Two graphs have equal summary hashes
// at m exactly when they are isomorphic at m under fixed edge labels.
struct GraphSummary {
    std::string graph_id;
    MSet summary;
};

GraphSummary summarize_graph(const IBDGraph& g);

// One record per distinct configuration across the whole collection: the
// configuration hash, the 1-based index of the first graph containing it,
// and the smallest marker at which that graph shows it.
struct UniqueGraphRecord {
    HashValue hash;
    std::size_t graph_index;
    Marker marker;
    friend bool operator==(const UniqueGraphRecord&, const UniqueGraphRecord&) = default;
};

// Scans summaries in order; within a summary, new configurations are
// emitted sorted by (first valid marker, hash).
std::vector<UniqueGraphRecord> unique_elements(std::span<const GraphSummary> summaries);

// Hash-free identity oracle used by the tests: the sorted multiset of
// per-node sorted edge-label sets valid at m, nodes with no valid edges
// omitted, length-prefix encoded.
std::string canonical_form(const IBDGraph& g, Marker m);

// Sorted distinct endpoints of every attachment interval.
std::vector<Marker> structure_breakpoints(const IBDGraph& g);

}  // namespace markhash
