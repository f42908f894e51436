#include "markhash/ibd_graph.hpp"

#include <algorithm>
#include <set>

#include "markhash/hashing.hpp"

namespace markhash {

std::vector<MSet> IBDGraph::node_sets() const {
    std::vector<MSet> out;
    out.reserve(nodes.size());
    for (const GraphNode& node : nodes) {
        MSet t;
        for (const EdgeAttachment& att : node.edges)
            t.insert(MarkedKey{hash_string(att.edge), att.when});
        out.push_back(std::move(t));
    }
    return out;
}

GraphSummary summarize_graph(const IBDGraph& g) {
    const std::vector<MSet> sets = g.node_sets();
    return GraphSummary{g.id, summarize(sets)};
}

std::vector<UniqueGraphRecord> unique_elements(std::span<const GraphSummary> summaries) {
    // Everything not yet attributed to a first-containing graph, unmarked.
    MSet remaining;
    for (const GraphSummary& s : summaries)
        s.summary.for_each_key([&](HashValue h, const ValiditySet&) {
            remaining.insert({h, ValiditySet::everywhere()});
        });

    std::vector<UniqueGraphRecord> records;
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const MSet fresh = set_intersection(summaries[i].summary, remaining);
        std::vector<MarkedKey> found = fresh.keys();
        std::sort(found.begin(), found.end(), [](const MarkedKey& a, const MarkedKey& b) {
            const Marker ma = a.vset.min(), mb = b.vset.min();
            return ma != mb ? ma < mb : a.hash < b.hash;
        });
        for (const MarkedKey& k : found) {
            records.push_back({k.hash, i + 1, k.vset.min()});
            remaining.pop(k.hash);
        }
    }
    return records;
}

std::string canonical_form(const IBDGraph& g, Marker m) {
    std::vector<std::vector<std::string>> sets;
    for (const GraphNode& node : g.nodes) {
        std::vector<std::string> labels;
        for (const EdgeAttachment& att : node.edges)
            if (att.when.contains(m)) labels.push_back(att.edge);
        if (labels.empty()) continue;  // an empty node carries no identity
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        sets.push_back(std::move(labels));
    }
    std::sort(sets.begin(), sets.end());

    std::string out;
    auto put_u32 = [&out](std::size_t v) {
        for (int i = 3; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    put_u32(sets.size());
    for (const auto& labels : sets) {
        put_u32(labels.size());
        for (const auto& l : labels) {
            put_u32(l.size());
            out += l;
        }
    }
    return out;
}

std::vector<Marker> structure_breakpoints(const IBDGraph& g) {
    std::set<Marker> bps;
    for (const GraphNode& node : g.nodes)
        for (const EdgeAttachment& att : node.edges)
            for (Marker m : att.when.breakpoints()) bps.insert(m);
    return std::vector<Marker>(bps.begin(), bps.end());
}

}  // namespace markhash
