#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "markhash/validity_set.hpp"

namespace markhash {

// A maximal run of markers over which an M-Set's reduced hash is constant
// and non-null.
struct Piece {
    Marker lo;
    Marker hi;
    HashValue value;
    friend bool operator==(const Piece&, const Piece&) = default;
};

// A marked set: hash-keyed table of validity sets, plus an augmented skip
// list over the interval endpoints that answers "reduce of everything valid
// at marker m" in O(log n).
//
// Skip list invariants (checked by check_consistency):
//   * leaf hash at marker m = reduce of h for every key interval opening at
//     m and negate(h) for every interval closing at m;
//   * a node's hash at level b = reduce of the level b-1 hashes over
//     [its marker, next level-b marker), equivalently the reduce of all leaf
//     hashes it covers;
//   * therefore the prefix reduce of leaves <= m equals the reduce of all
//     keys valid at m.
class MSet {
public:
    static constexpr int kMaxLevel = 32;        // tower heights 0..32
    static constexpr std::uint64_t kDefaultSeed = 0x6d61726b68617368ull;

    explicit MSet(std::uint64_t seed = kDefaultSeed);
    ~MSet();
    MSet(const MSet& other);
    MSet& operator=(const MSet& other);
    MSet(MSet&& other) noexcept;
    MSet& operator=(MSet&& other) noexcept;

    // Unions the key's validity set into the set; a key with an empty
    // validity set is a no-op.
    void insert(const MarkedKey& key);
    void add_valid_region(HashValue h, Marker lo, Marker hi);

    // Removes and returns the key; throws std::out_of_range if absent.
    MarkedKey pop(HashValue h);

    MarkedKey get(HashValue h) const;  // throws std::out_of_range if absent
    bool exists(HashValue h) const;
    bool exists_at(HashValue h, Marker m) const;

    std::size_t size() const { return table_.size(); }  // number of keys
    bool empty() const { return table_.empty(); }

    HashValue hash_at_marker(Marker m) const;
    // `visited` receives the number of skip-list nodes touched.
    HashValue hash_at_marker(Marker m, std::size_t& visited) const;

    // Sorted leaf markers (every interval endpoint present in the set).
    std::vector<Marker> breakpoints() const;

    // The piecewise-constant reduced hash, one left-to-right leaf pass.
    // Adjacent runs with equal hash are coalesced; null runs are dropped.
    std::vector<Piece> pieces() const;

    // Keys sorted by hash (deterministic iteration for output paths).
    std::vector<MarkedKey> keys() const;
    void for_each_key(const std::function<void(HashValue, const ValiditySet&)>& fn) const;

    // Full structural audit; throws std::logic_error describing the first
    // violated invariant.
    void check_consistency() const;

    // Debug dump.  Format: a `leaf <marker>\t<hex>` line per leaf, then for
    // each populated level `level <b>: head=<hex> <marker>=<hex> ...`.
    void dump(std::ostream& os) const;

private:
    struct Node;
    struct Link {
        Node* next = nullptr;
        HashValue hash;  // level 0: the leaf hash; level b: covered reduce
    };
    struct Node {
        Marker marker;
        std::uint32_t endpoint_refs;  // how many key intervals end here
        std::vector<Link> links;      // size = height + 1
        int height() const { return static_cast<int>(links.size()) - 1; }
    };

    void clone_from(const MSet& other);
    void destroy();
    void find_path(Marker m, Node** path) const;
    int random_height();
    // Adds `delta` to the leaf at m (creating/removing it as needed) and to
    // every covering node hash; `ref_delta` adjusts the endpoint refcount.
    void leaf_apply(Marker m, HashValue delta, int ref_delta);
    void apply_vset_change(HashValue h, const ValiditySet& before, const ValiditySet& after);

    std::unordered_map<HashValue, ValiditySet> table_;
    Node head_;
    int height_ = 0;  // tallest tower in use
    std::mt19937_64 rng_;
};

// Canonicalized copy: one key per distinct piece hash, valid exactly where
// the original reduces to that hash.  Reducing an M-Set whose keys were all
// inserted pre-reduced leaves it unchanged.
MSet reduce_mset(const MSet& t);

// Fold a family of M-Sets into one summary: at every marker the summary is
// the reduce of rehash(hash_at_marker) over all inputs.  Multiplicity
// counts; rehash is applied exactly once per input.
MSet summarize(std::span<const MSet> inputs);

bool equal_at_marker(std::span<const MSet> inputs, Marker m);
bool equal_at_marker(const MSet& a, const MSet& b, Marker m);

// Markers at which all inputs reduce to the same hash (vacuously everywhere
// for zero or one input).
ValiditySet equality_vset(std::span<const MSet> inputs);
ValiditySet equality_vset(const MSet& a, const MSet& b);

// Markers at which the set reduces to exactly h; h may be the null hash.
ValiditySet equal_to_hash(const MSet& t, HashValue h);

// Keywise set algebra.  Keys whose resulting validity set is empty are
// dropped.  Difference removes T2's validity regions from matching keys and
// passes through keys absent from T2.
MSet set_union(std::span<const MSet> inputs);
MSet set_union(const MSet& a, const MSet& b);
MSet set_intersection(std::span<const MSet> inputs);
MSet set_intersection(const MSet& a, const MSet& b);
MSet set_difference(const MSet& t1, const MSet& t2);

// Marker algebra applied to every key's validity set.
MSet marker_union(const MSet& t, const ValiditySet& v);
MSet marker_intersection(const MSet& t, const ValiditySet& v);

// Keys valid at m, unmarked (valid everywhere) in the result.
MSet snapshot(const MSet& t, Marker m);
// Every key, unmarked.
MSet key_set(const MSet& t);

ValiditySet union_of_vsets(const MSet& t);
ValiditySet intersection_of_vsets(const MSet& t);

}  // namespace markhash
