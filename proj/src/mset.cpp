#include "markhash/mset.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "markhash/hashing.hpp"

namespace markhash {

MSet::MSet(std::uint64_t seed) : rng_(seed) {
    head_.marker = kMarkerNegInf;
    head_.endpoint_refs = 0;
    head_.links.resize(kMaxLevel + 1);
}

MSet::~MSet() { destroy(); }

MSet::MSet(const MSet& other) : MSet() { clone_from(other); }

MSet& MSet::operator=(const MSet& other) {
    if (this != &other) {
        destroy();
        clone_from(other);
    }
    return *this;
}

MSet::MSet(MSet&& other) noexcept
    : table_(std::move(other.table_)),
      head_(std::move(other.head_)),
      height_(other.height_),
      rng_(other.rng_) {
    other.head_.links.assign(kMaxLevel + 1, Link{});
    other.height_ = 0;
    other.table_.clear();
}

MSet& MSet::operator=(MSet&& other) noexcept {
    if (this != &other) {
        destroy();
        table_ = std::move(other.table_);
        head_ = std::move(other.head_);
        height_ = other.height_;
        rng_ = other.rng_;
        other.head_.links.assign(kMaxLevel + 1, Link{});
        other.height_ = 0;
        other.table_.clear();
    }
    return *this;
}

void MSet::destroy() {
    Node* n = head_.links.empty() ? nullptr : head_.links[0].next;
    while (n) {
        Node* next = n->links[0].next;
        delete n;
        n = next;
    }
    head_.links.assign(kMaxLevel + 1, Link{});
    height_ = 0;
    table_.clear();
}

// Structural deep copy: identical towers, hashes and generator state.
void MSet::clone_from(const MSet& other) {
    table_ = other.table_;
    height_ = other.height_;
    rng_ = other.rng_;
    head_.links.assign(kMaxLevel + 1, Link{});
    for (int b = 0; b <= kMaxLevel; ++b) head_.links[b].hash = other.head_.links[b].hash;
    Node* last[kMaxLevel + 1];
    for (int b = 0; b <= kMaxLevel; ++b) last[b] = &head_;
    for (const Node* n = other.head_.links[0].next; n; n = n->links[0].next) {
        Node* c = new Node;
        c->marker = n->marker;
        c->endpoint_refs = n->endpoint_refs;
        c->links.resize(n->links.size());
        for (int b = 0; b <= n->height(); ++b) {
            c->links[b].hash = n->links[b].hash;
            last[b]->links[b].next = c;
            last[b] = c;
        }
    }
}

// path[b] <- rightmost node at level b with marker < m (head when none).
void MSet::find_path(Marker m, Node** path) const {
    Node* n = const_cast<Node*>(&head_);
    for (int b = kMaxLevel; b >= 0; --b) {
        while (n->links[b].next && n->links[b].next->marker < m) n = n->links[b].next;
        path[b] = n;
    }
}

int MSet::random_height() {
    int h = 0;
    while (h < kMaxLevel && (rng_() & 3) == 0) ++h;  // promotion probability 1/4
    return h;
}

void MSet::leaf_apply(Marker m, HashValue delta, int ref_delta) {
    Node* path[kMaxLevel + 1];
    find_path(m, path);
    Node* at = path[0]->links[0].next;
    if (at && at->marker == m) {
        const int h = at->height();
        for (int b = 0; b <= h; ++b) at->links[b].hash = reduce(at->links[b].hash, delta);
        for (int b = h + 1; b <= kMaxLevel; ++b)
            path[b]->links[b].hash = reduce(path[b]->links[b].hash, delta);
        if (ref_delta < 0 && at->endpoint_refs < static_cast<std::uint32_t>(-ref_delta))
            throw std::logic_error("endpoint refcount underflow");
        at->endpoint_refs += static_cast<std::uint32_t>(ref_delta);
        if (at->endpoint_refs == 0) {
            // Every referencing interval endpoint has been withdrawn, so the
            // contributions cancelled exactly.
            if (!at->links[0].hash.is_null())
                throw std::logic_error("dangling leaf hash on removal");
            for (int b = 1; b <= h; ++b) {
                if (path[b]->links[b].next != at) throw std::logic_error("broken tower link");
                path[b]->links[b].hash = reduce(path[b]->links[b].hash, at->links[b].hash);
            }
            for (int b = 0; b <= h; ++b) path[b]->links[b].next = at->links[b].next;
            delete at;
            while (height_ > 0 && head_.links[height_].next == nullptr) --height_;
        }
        return;
    }

    if (ref_delta <= 0) throw std::logic_error("removing an absent leaf");
    const int h = random_height();
    Node* node = new Node;
    node->marker = m;
    node->endpoint_refs = static_cast<std::uint32_t>(ref_delta);
    node->links.resize(h + 1);
    node->links[0].hash = delta;
    node->links[0].next = path[0]->links[0].next;
    path[0]->links[0].next = node;
    for (int b = 1; b <= h; ++b) {
        Node* nxt = path[b]->links[b].next;
        // Reduce of the level b-1 hashes from the new node up to nxt; these
        // are exactly the leaves the new node covers at level b.
        HashValue covered;
        for (Node* q = node; q != nxt; q = q->links[b - 1].next)
            covered = reduce(covered, q->links[b - 1].hash);
        node->links[b].hash = covered;
        node->links[b].next = nxt;
        path[b]->links[b].next = node;
        // The predecessor's span shrank to [its marker, m); it also never
        // covers the new leaf, hence + delta - covered.
        path[b]->links[b].hash =
            reduce(reduce(path[b]->links[b].hash, delta), negate(covered));
    }
    for (int b = h + 1; b <= kMaxLevel; ++b)
        path[b]->links[b].hash = reduce(path[b]->links[b].hash, delta);
    if (h > height_) height_ = h;
}

void MSet::apply_vset_change(HashValue h, const ValiditySet& before, const ValiditySet& after) {
    // Endpoint streams, (marker, opens) ascending; within one normalized
    // validity set every endpoint is distinct.
    auto events = [](const ValiditySet& v) {
        std::vector<std::pair<Marker, bool>> evs;
        evs.reserve(v.interval_count() * 2);
        for (const auto& iv : v.intervals()) {
            evs.emplace_back(iv.lo, true);
            evs.emplace_back(iv.hi, false);
        }
        std::sort(evs.begin(), evs.end());
        return evs;
    };
    const auto olds = events(before);
    const auto news = events(after);
    auto contribution = [&](bool opens) { return opens ? h : negate(h); };
    std::size_t i = 0, j = 0;
    while (i < olds.size() || j < news.size()) {
        if (i < olds.size() && j < news.size() && olds[i] == news[j]) {
            ++i, ++j;
        } else if (j >= news.size() || (i < olds.size() && olds[i] < news[j])) {
            leaf_apply(olds[i].first, negate(contribution(olds[i].second)), -1);
            ++i;
        } else {
            leaf_apply(news[j].first, contribution(news[j].second), +1);
            ++j;
        }
    }
}

void MSet::insert(const MarkedKey& key) {
    if (key.vset.empty()) return;
    auto it = table_.find(key.hash);
    if (it == table_.end()) {
        apply_vset_change(key.hash, ValiditySet{}, key.vset);
        table_.emplace(key.hash, key.vset);
    } else {
        ValiditySet merged = union_of(it->second, key.vset);
        if (merged == it->second) return;
        apply_vset_change(key.hash, it->second, merged);
        it->second = std::move(merged);
    }
}

void MSet::add_valid_region(HashValue h, Marker lo, Marker hi) {
    insert(MarkedKey{h, ValiditySet(lo, hi)});
}

MarkedKey MSet::pop(HashValue h) {
    auto it = table_.find(h);
    if (it == table_.end()) throw std::out_of_range("pop: key not present");
    MarkedKey out{h, std::move(it->second)};
    apply_vset_change(h, out.vset, ValiditySet{});
    table_.erase(it);
    return out;
}

MarkedKey MSet::get(HashValue h) const {
    auto it = table_.find(h);
    if (it == table_.end()) throw std::out_of_range("get: key not present");
    return MarkedKey{h, it->second};
}

bool MSet::exists(HashValue h) const { return table_.contains(h); }

bool MSet::exists_at(HashValue h, Marker m) const {
    auto it = table_.find(h);
    return it != table_.end() && it->second.contains(m);
}

HashValue MSet::hash_at_marker(Marker m) const {
    std::size_t visited;
    return hash_at_marker(m, visited);
}

// Running-hash traversal: moving right at level b folds in the departed
// node's level-b hash (the leaves it covers); descending folds nothing.  On
// arrival the accumulator holds the reduce of all leaves before the final
// node, and that node's own leaf hash completes the prefix.
HashValue MSet::hash_at_marker(Marker m, std::size_t& visited) const {
    const Node* n = &head_;
    HashValue h;
    visited = 1;
    for (int b = height_; b >= 0; --b) {
        while (n->links[b].next && n->links[b].next->marker <= m) {
            h = reduce(h, n->links[b].hash);
            n = n->links[b].next;
            ++visited;
        }
    }
    return reduce(h, n->links[0].hash);
}

std::vector<Marker> MSet::breakpoints() const {
    std::vector<Marker> out;
    for (const Node* n = head_.links[0].next; n; n = n->links[0].next)
        out.push_back(n->marker);
    return out;
}

std::vector<Piece> MSet::pieces() const {
    std::vector<Piece> out;
    HashValue run;
    for (const Node* n = head_.links[0].next; n; n = n->links[0].next) {
        run = reduce(run, n->links[0].hash);
        const Node* nx = n->links[0].next;
        const Marker lo = n->marker;
        const Marker hi = nx ? nx->marker : kMarkerPosInf;
        if (lo >= hi || run.is_null()) continue;
        if (!out.empty() && out.back().hi == lo && out.back().value == run)
            out.back().hi = hi;
        else
            out.push_back({lo, hi, run});
    }
    return out;
}

std::vector<MarkedKey> MSet::keys() const {
    std::vector<MarkedKey> out;
    out.reserve(table_.size());
    for (const auto& [h, vs] : table_) out.push_back({h, vs});
    std::sort(out.begin(), out.end(),
              [](const MarkedKey& a, const MarkedKey& b) { return a.hash < b.hash; });
    return out;
}

void MSet::for_each_key(const std::function<void(HashValue, const ValiditySet&)>& fn) const {
    for (const auto& [h, vs] : table_) fn(h, vs);
}

void MSet::check_consistency() const {
    // Expected leaves, rebuilt from the key table.
    std::map<Marker, std::pair<HashValue, std::uint64_t>> expect;
    for (const auto& [h, vs] : table_) {
        if (vs.empty()) throw std::logic_error("table holds a key with empty validity set");
        for (const auto& iv : vs.intervals()) {
            auto& open = expect[iv.lo];
            open.first = reduce(open.first, h);
            open.second += 1;
            auto& close = expect[iv.hi];
            close.first = reduce(close.first, negate(h));
            close.second += 1;
        }
    }

    auto expect_it = expect.begin();
    Marker prev = kMarkerNegInf;
    bool first = true;
    HashValue prefix;
    std::size_t leaves = 0;
    for (const Node* n = head_.links[0].next; n; n = n->links[0].next, ++leaves) {
        if (!first && n->marker <= prev) throw std::logic_error("leaf markers out of order");
        first = false;
        prev = n->marker;
        if (n->endpoint_refs == 0) throw std::logic_error("leaf with zero endpoint refs");
        if (static_cast<int>(n->links.size()) - 1 > kMaxLevel)
            throw std::logic_error("tower exceeds level cap");
        if (expect_it == expect.end() || expect_it->first != n->marker)
            throw std::logic_error("leaf marker not derivable from the key table");
        if (expect_it->second.first != n->links[0].hash)
            throw std::logic_error("leaf hash does not match key table");
        if (expect_it->second.second != n->endpoint_refs)
            throw std::logic_error("leaf refcount does not match key table");
        ++expect_it;
        prefix = reduce(prefix, n->links[0].hash);
        if (hash_at_marker(n->marker) != prefix)
            throw std::logic_error("prefix hash mismatch at leaf");
    }
    if (expect_it != expect.end()) throw std::logic_error("missing leaf for key table endpoint");

    // Level hashes: each node's level-b hash must equal the reduce of the
    // level b-1 hashes it spans.
    for (int b = 1; b <= kMaxLevel; ++b) {
        for (const Node* n = &head_; n; n = n->links[b].next) {
            if (n != &head_ && n->height() < b) throw std::logic_error("node on wrong level");
            const Node* nxt = n->links[b].next;
            HashValue sum;
            for (const Node* q = n; q != nxt; q = q->links[b - 1].next)
                sum = reduce(sum, q->links[b - 1].hash);
            if (sum != n->links[b].hash) throw std::logic_error("level hash mismatch");
        }
    }

    for (int b = height_ + 1; b <= kMaxLevel; ++b)
        if (head_.links[b].next) throw std::logic_error("tower above recorded height");
    if (height_ > 0 && head_.links[height_].next == nullptr)
        throw std::logic_error("recorded height has no tower");
}

void MSet::dump(std::ostream& os) const {
    for (const Node* n = head_.links[0].next; n; n = n->links[0].next)
        os << "leaf " << marker_to_string(n->marker) << '\t' << n->links[0].hash.to_hex()
           << '\n';
    for (int b = 1; b <= height_; ++b) {
        os << "level " << b << ": head=" << head_.links[b].hash.to_hex();
        for (const Node* n = head_.links[b].next; n; n = n->links[b].next)
            os << ' ' << marker_to_string(n->marker) << '=' << n->links[b].hash.to_hex();
        os << '\n';
    }
}

MSet reduce_mset(const MSet& t) {
    MSet out;
    for (const Piece& p : t.pieces()) out.add_valid_region(p.value, p.lo, p.hi);
    return out;
}

namespace {

// Sweeps piece deltas into maximal constant non-null runs.
std::vector<Piece> sweep_pieces(std::vector<std::pair<Marker, HashValue>> events) {
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Piece> out;
    HashValue run;
    std::size_t i = 0;
    bool started = false;
    Marker prev = kMarkerNegInf;
    while (i < events.size()) {
        const Marker m = events[i].first;
        if (started && prev < m && !run.is_null()) {
            if (!out.empty() && out.back().hi == prev && out.back().value == run)
                out.back().hi = m;
            else
                out.push_back({prev, m, run});
        }
        while (i < events.size() && events[i].first == m) {
            run = reduce(run, events[i].second);
            ++i;
        }
        prev = m;
        started = true;
    }
    // The closing events cancel everything, so no run extends past the last
    // marker.
    return out;
}

}  // namespace

MSet summarize(std::span<const MSet> inputs) {
    std::vector<Piece> all;
    for (const MSet& t : inputs) {
        auto ps = t.pieces();
        all.insert(all.end(), ps.begin(), ps.end());
    }
    std::vector<HashValue> vals(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) vals[i] = all[i].value;
    std::vector<HashValue> rh(all.size());
    rehash_many(vals, rh);

    std::vector<std::pair<Marker, HashValue>> events;
    events.reserve(all.size() * 2);
    for (std::size_t i = 0; i < all.size(); ++i) {
        events.emplace_back(all[i].lo, rh[i]);
        events.emplace_back(all[i].hi, negate(rh[i]));
    }
    MSet out;
    for (const Piece& p : sweep_pieces(std::move(events)))
        out.add_valid_region(p.value, p.lo, p.hi);
    return out;
}

bool equal_at_marker(std::span<const MSet> inputs, Marker m) {
    if (inputs.size() <= 1) return true;
    const HashValue h0 = inputs[0].hash_at_marker(m);
    for (std::size_t i = 1; i < inputs.size(); ++i)
        if (inputs[i].hash_at_marker(m) != h0) return false;
    return true;
}

bool equal_at_marker(const MSet& a, const MSet& b, Marker m) {
    return a.hash_at_marker(m) == b.hash_at_marker(m);
}

namespace {

// Markers where two piecewise-constant profiles agree; regions outside any
// piece hold the null hash and compare equal to each other.
ValiditySet piecewise_equal(const std::vector<Piece>& a, const std::vector<Piece>& b) {
    std::vector<Marker> cuts{kMarkerNegInf, kMarkerPosInf};
    for (const auto& p : a) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    for (const auto& p : b) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto value_at = [](const std::vector<Piece>& ps, std::size_t& idx, Marker m) {
        while (idx < ps.size() && ps[idx].hi <= m) ++idx;
        if (idx < ps.size() && ps[idx].lo <= m && m < ps[idx].hi) return ps[idx].value;
        return kNullHash;
    };
    ValiditySet out;
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Marker lo = cuts[k], hi = cuts[k + 1];
        if (lo >= hi) continue;
        if (value_at(a, ia, lo) == value_at(b, ib, lo)) out.add(lo, hi);
    }
    return out;
}

}  // namespace

ValiditySet equality_vset(std::span<const MSet> inputs) {
    if (inputs.size() <= 1) return ValiditySet::everywhere();
    ValiditySet out = ValiditySet::everywhere();
    const auto p0 = inputs[0].pieces();
    for (std::size_t i = 1; i < inputs.size(); ++i)
        out = intersection_of(out, piecewise_equal(p0, inputs[i].pieces()));
    return out;
}

ValiditySet equality_vset(const MSet& a, const MSet& b) {
    return piecewise_equal(a.pieces(), b.pieces());
}

ValiditySet equal_to_hash(const MSet& t, HashValue h) {
    const auto ps = t.pieces();
    if (h.is_null()) {
        ValiditySet out = ValiditySet::everywhere();
        for (const auto& p : ps) out.clear(p.lo, p.hi);
        return out;
    }
    ValiditySet out;
    for (const auto& p : ps)
        if (p.value == h) out.add(p.lo, p.hi);
    return out;
}

MSet set_union(std::span<const MSet> inputs) {
    MSet out;
    for (const MSet& t : inputs)
        t.for_each_key([&](HashValue h, const ValiditySet& vs) { out.insert({h, vs}); });
    return out;
}

MSet set_union(const MSet& a, const MSet& b) {
    MSet out;
    a.for_each_key([&](HashValue h, const ValiditySet& vs) { out.insert({h, vs}); });
    b.for_each_key([&](HashValue h, const ValiditySet& vs) { out.insert({h, vs}); });
    return out;
}

MSet set_intersection(std::span<const MSet> inputs) {
    MSet out;
    if (inputs.empty()) return out;
    inputs[0].for_each_key([&](HashValue h, const ValiditySet& vs) {
        ValiditySet acc = vs;
        for (std::size_t i = 1; i < inputs.size() && !acc.empty(); ++i) {
            if (!inputs[i].exists(h)) return;
            acc = intersection_of(acc, inputs[i].get(h).vset);
        }
        if (!acc.empty()) out.insert({h, acc});
    });
    return out;
}

MSet set_intersection(const MSet& a, const MSet& b) {
    MSet out;
    a.for_each_key([&](HashValue h, const ValiditySet& vs) {
        if (!b.exists(h)) return;
        ValiditySet acc = intersection_of(vs, b.get(h).vset);
        if (!acc.empty()) out.insert({h, acc});
    });
    return out;
}

MSet set_difference(const MSet& t1, const MSet& t2) {
    MSet out;
    t1.for_each_key([&](HashValue h, const ValiditySet& vs) {
        if (!t2.exists(h)) {
            out.insert({h, vs});
            return;
        }
        ValiditySet d = difference_of(vs, t2.get(h).vset);
        if (!d.empty()) out.insert({h, d});
    });
    return out;
}

MSet marker_union(const MSet& t, const ValiditySet& v) {
    MSet out;
    t.for_each_key(
        [&](HashValue h, const ValiditySet& vs) { out.insert({h, union_of(vs, v)}); });
    return out;
}

MSet marker_intersection(const MSet& t, const ValiditySet& v) {
    MSet out;
    t.for_each_key([&](HashValue h, const ValiditySet& vs) {
        ValiditySet acc = intersection_of(vs, v);
        if (!acc.empty()) out.insert({h, acc});
    });
    return out;
}

MSet snapshot(const MSet& t, Marker m) {
    MSet out;
    t.for_each_key([&](HashValue h, const ValiditySet& vs) {
        if (vs.contains(m)) out.insert({h, ValiditySet::everywhere()});
    });
    return out;
}

MSet key_set(const MSet& t) {
    MSet out;
    t.for_each_key(
        [&](HashValue h, const ValiditySet&) { out.insert({h, ValiditySet::everywhere()}); });
    return out;
}

ValiditySet union_of_vsets(const MSet& t) {
    ValiditySet out;
    t.for_each_key([&](HashValue, const ValiditySet& vs) { out = union_of(out, vs); });
    return out;
}

ValiditySet intersection_of_vsets(const MSet& t) {
    ValiditySet out;
    bool first = true;
    t.for_each_key([&](HashValue, const ValiditySet& vs) {
        out = first ? vs : intersection_of(out, vs);
        first = false;
    });
    return out;
}

}  // namespace markhash
