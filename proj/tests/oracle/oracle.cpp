#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace markhash::oracle {

namespace {

// N = 2^128 - 159 as two little-endian 64-bit limbs.
constexpr std::uint64_t kNLo = 0xffffffffffffff61ull;
constexpr std::uint64_t kNHi = 0xffffffffffffffffull;

struct Acc4 {
    std::uint64_t limb[4] = {0, 0, 0, 0};  // little-endian

    void add_at(int idx, std::uint64_t v) {
        while (v != 0) {
            if (idx >= 4) throw std::logic_error("oracle accumulator overflow");
            const std::uint64_t old = limb[idx];
            limb[idx] += v;
            v = limb[idx] < old ? 1 : 0;
            ++idx;
        }
    }

    HashValue reduce_out() {
        // Fold the part above 2^128 using 2^128 == 159 (mod N), then
        // subtract N until canonical.
        while (limb[2] != 0 || limb[3] != 0) {
            const unsigned __int128 p0 = static_cast<unsigned __int128>(limb[2]) * 159u;
            const unsigned __int128 p1 = static_cast<unsigned __int128>(limb[3]) * 159u;
            limb[2] = limb[3] = 0;
            add_at(0, static_cast<std::uint64_t>(p0));
            add_at(1, static_cast<std::uint64_t>(p0 >> 64));
            add_at(1, static_cast<std::uint64_t>(p1));
            add_at(2, static_cast<std::uint64_t>(p1 >> 64));
        }
        while (limb[1] > kNHi || (limb[1] == kNHi && limb[0] >= kNLo)) {
            const std::uint64_t borrow = limb[0] < kNLo ? 1 : 0;
            limb[0] -= kNLo;
            limb[1] -= kNHi + borrow;
        }
        return HashValue::from_reduced(make_uint128(limb[1], limb[0]));
    }
};

bool member(const ValiditySet& v, Marker m) {
    for (const MarkerInterval& iv : v.intervals())
        if (iv.lo <= m && m < iv.hi) return true;
    return false;
}

}  // namespace

HashValue naive_reduce(std::span<const HashValue> values) {
    Acc4 acc;
    for (const HashValue& h : values) {
        acc.add_at(0, static_cast<std::uint64_t>(h.value()));
        acc.add_at(1, static_cast<std::uint64_t>(h.value() >> 64));
    }
    return acc.reduce_out();
}

HashValue mod_be_bytes(std::span<const std::uint8_t> bytes16) {
    if (bytes16.size() != 16) throw std::invalid_argument("expected 16 bytes");
    // N big-endian: 15 bytes of 0xff then 0x61.
    std::uint8_t n_be[16];
    for (int i = 0; i < 15; ++i) n_be[i] = 0xff;
    n_be[15] = 0x61;
    std::uint8_t v[16];
    std::copy(bytes16.begin(), bytes16.end(), v);
    auto geq = [&] {
        for (int i = 0; i < 16; ++i) {
            if (v[i] != n_be[i]) return v[i] > n_be[i];
        }
        return true;
    };
    while (geq()) {
        int borrow = 0;
        for (int i = 15; i >= 0; --i) {
            const int d = int(v[i]) - int(n_be[i]) - borrow;
            v[i] = static_cast<std::uint8_t>(d & 0xff);
            borrow = d < 0 ? 1 : 0;
        }
    }
    uint128 out = 0;
    for (int i = 0; i < 16; ++i) out = (out << 8) | v[i];
    return HashValue::from_reduced(out);
}

HashValue naive_hash_at(std::span<const MarkedKey> keys, Marker m) {
    std::vector<HashValue> present;
    for (const MarkedKey& k : keys)
        if (member(k.vset, m)) present.push_back(k.hash);
    return naive_reduce(present);
}

std::vector<char> window_bits(const ValiditySet& v, Marker lo, Marker hi) {
    std::vector<char> bits(static_cast<std::size_t>(hi - lo), 0);
    for (const MarkerInterval& iv : v.intervals()) {
        const Marker a = std::max(iv.lo, lo);
        const Marker b = std::min(iv.hi, hi);
        for (Marker m = a; m < b; ++m) bits[static_cast<std::size_t>(m - lo)] = 1;
    }
    return bits;
}

std::vector<std::vector<std::string>> graph_identity(const IBDGraph& g, Marker m) {
    std::vector<std::vector<std::string>> id;
    for (const GraphNode& node : g.nodes) {
        std::vector<std::string> labels;
        for (const EdgeAttachment& att : node.edges)
            if (member(att.when, m)) labels.push_back(att.edge);
        if (labels.empty()) continue;
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        id.push_back(std::move(labels));
    }
    std::sort(id.begin(), id.end());
    return id;
}

std::size_t naive_unique_graphs(std::span<const IBDGraph> graphs, Marker lo, Marker hi) {
    std::set<std::vector<std::vector<std::string>>> seen;
    for (const IBDGraph& g : graphs) {
        std::set<Marker> starts{lo};
        for (const GraphNode& node : g.nodes)
            for (const EdgeAttachment& att : node.edges)
                for (const MarkerInterval& iv : att.when.intervals()) {
                    if (iv.lo > lo && iv.lo < hi) starts.insert(iv.lo);
                    if (iv.hi > lo && iv.hi < hi) starts.insert(iv.hi);
                }
        for (Marker m : starts) {
            auto id = graph_identity(g, m);
            if (!id.empty()) seen.insert(std::move(id));
        }
    }
    return seen.size();
}

}  // namespace markhash::oracle
