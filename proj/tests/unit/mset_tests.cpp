#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "markhash/hashing.hpp"
#include "markhash/mset.hpp"
#include "../oracle/oracle.hpp"

using namespace markhash;

namespace {

HashValue rnd(std::mt19937_64& rng) { return HashValue::from_wide(make_uint128(rng(), rng())); }

MarkedKey random_key(std::mt19937_64& rng, Marker lo, Marker hi, int max_ivs) {
    MarkedKey k{rnd(rng), {}};
    const int n = 1 + static_cast<int>(rng() % max_ivs);
    for (int i = 0; i < n; ++i) {
        const Marker a = lo + static_cast<Marker>(rng() % static_cast<std::uint64_t>(hi - lo - 1));
        const Marker len = 1 + static_cast<Marker>(rng() % 60);
        k.vset.add(a, std::min<Marker>(a + len, hi));
    }
    return k;
}

std::vector<MarkedKey> table_of(const MSet& t) { return t.keys(); }

}  // namespace

TEST_CASE("empty set reduces to null everywhere") {
    const MSet t;
    CHECK(t.empty());
    CHECK(t.size() == 0);
    CHECK(t.hash_at_marker(kMarkerNegInf) == kNullHash);
    CHECK(t.hash_at_marker(0) == kNullHash);
    CHECK(t.hash_at_marker(kMarkerPosInf) == kNullHash);
    CHECK(t.breakpoints().empty());
    CHECK(t.pieces().empty());
    t.check_consistency();
}

TEST_CASE("single bounded key") {
    MSet t;
    const HashValue h = hash_string("A");
    t.add_valid_region(h, 0, 5);
    CHECK(t.size() == 1);
    CHECK(t.exists(h));
    CHECK(t.exists_at(h, 0));
    CHECK(t.exists_at(h, 4));
    CHECK(!t.exists_at(h, 5));
    CHECK(!t.exists_at(h, -1));
    CHECK(t.hash_at_marker(-1) == kNullHash);
    CHECK(t.hash_at_marker(0) == h);
    CHECK(t.hash_at_marker(4) == h);
    CHECK(t.hash_at_marker(5) == kNullHash);
    CHECK(t.breakpoints() == std::vector<Marker>{0, 5});
    REQUIRE(t.pieces().size() == 1);
    CHECK(t.pieces()[0] == Piece{0, 5, h});
    t.check_consistency();
}

TEST_CASE("insert unions validity sets per key") {
    MSet t;
    const HashValue h = hash_string("A");
    t.add_valid_region(h, 0, 5);
    t.add_valid_region(h, 10, 15);
    t.add_valid_region(h, 3, 8);  // overlaps the first interval
    CHECK(t.size() == 1);
    CHECK(t.get(h).vset.to_string() == "[0, 8) [10, 15)");
    CHECK(t.hash_at_marker(7) == h);
    CHECK(t.hash_at_marker(8) == kNullHash);
    CHECK(t.hash_at_marker(12) == h);
    // Re-inserting a covered region changes nothing.
    t.add_valid_region(h, 1, 2);
    CHECK(t.get(h).vset.to_string() == "[0, 8) [10, 15)");
    t.check_consistency();
}

TEST_CASE("inserting an empty validity set is a no-op") {
    MSet t;
    t.insert(MarkedKey{hash_string("A"), {}});
    CHECK(t.empty());
    CHECK(t.breakpoints().empty());
}

TEST_CASE("overlapping keys reduce together") {
    MSet t;
    const HashValue a = hash_string("A"), b = hash_string("B");
    t.add_valid_region(a, 0, 10);
    t.add_valid_region(b, 5, 15);
    CHECK(t.hash_at_marker(2) == a);
    CHECK(t.hash_at_marker(7) == reduce(a, b));
    CHECK(t.hash_at_marker(12) == b);
    CHECK(t.hash_at_marker(15) == kNullHash);
    t.check_consistency();
}

TEST_CASE("unbounded validity regions") {
    // One key everywhere, one on [-inf, 10), one on [20, inf).
    MSet t;
    const HashValue a = hash_string("A"), e = hash_string("E"), d = hash_string("D");
    t.insert({a, ValiditySet::everywhere()});
    t.add_valid_region(e, kMarkerNegInf, 10);
    t.add_valid_region(d, 20, kMarkerPosInf);
    CHECK(t.hash_at_marker(kMarkerNegInf) == reduce(a, e));
    CHECK(t.hash_at_marker(9) == reduce(a, e));
    CHECK(t.hash_at_marker(10) == a);
    CHECK(t.hash_at_marker(20) == reduce(a, d));
    CHECK(t.hash_at_marker(kMarkerPosInf - 1) == reduce(a, d));
    t.check_consistency();
}

TEST_CASE("pop removes a key and empties the structure exactly") {
    MSet t;
    const HashValue a = hash_string("A"), b = hash_string("B");
    t.add_valid_region(a, 0, 10);
    t.add_valid_region(b, 5, 15);
    const MarkedKey popped = t.pop(a);
    CHECK(popped.hash == a);
    CHECK(popped.vset.to_string() == "[0, 10)");
    CHECK(!t.exists(a));
    CHECK(t.hash_at_marker(7) == b);
    t.check_consistency();

    t.pop(b);
    CHECK(t.empty());
    CHECK(t.breakpoints().empty());  // every leaf withdrawn
    t.check_consistency();

    CHECK_THROWS_AS(t.pop(a), std::out_of_range);
    CHECK_THROWS_AS(t.get(a), std::out_of_range);
}

TEST_CASE("content determines queries regardless of construction order") {
    std::mt19937_64 rng(300);
    std::vector<MarkedKey> keys;
    for (int i = 0; i < 30; ++i) keys.push_back(random_key(rng, 0, 500, 4));

    MSet forward(1);
    for (const auto& k : keys) forward.insert(k);
    MSet backward(999);
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) backward.insert(*it);

    for (Marker m = -1; m <= 501; ++m)
        CHECK(forward.hash_at_marker(m) == backward.hash_at_marker(m));
    CHECK(forward.keys() == backward.keys());
}

TEST_CASE("deep copies are independent and identically structured") {
    std::mt19937_64 rng(301);
    MSet t;
    for (int i = 0; i < 20; ++i) t.insert(random_key(rng, 0, 300, 3));

    MSet copy = t;
    copy.check_consistency();
    std::ostringstream da, db;
    t.dump(da);
    copy.dump(db);
    CHECK(da.str() == db.str());  // towers cloned, not regrown

    const HashValue extra = hash_string("extra");
    copy.add_valid_region(extra, 50, 60);
    CHECK(copy.exists(extra));
    CHECK(!t.exists(extra));
    CHECK(t.hash_at_marker(55) != copy.hash_at_marker(55));
    t.check_consistency();
    copy.check_consistency();

    MSet moved = std::move(copy);
    moved.check_consistency();
    CHECK(moved.exists(extra));
}

TEST_CASE("pieces coalesce across a cancelling leaf") {
    MSet t;
    std::mt19937_64 rng(302);
    const HashValue a = rnd(rng), b = rnd(rng);
    const HashValue c = reduce(a, b);  // chosen so the value never changes at 5
    t.add_valid_region(a, 0, 5);
    t.add_valid_region(b, 0, 5);
    t.add_valid_region(c, 5, 10);
    REQUIRE(t.breakpoints().size() == 3);  // leaves at 0, 5, 10; r0(5) cancels
    const auto ps = t.pieces();
    REQUIRE(ps.size() == 1);
    CHECK(ps[0] == Piece{0, 10, c});
    t.check_consistency();

    const MSet r = reduce_mset(t);
    CHECK(r.size() == 1);
    CHECK(r.get(c).vset.to_string() == "[0, 10)");
}

TEST_CASE("reduce_mset canonicalizes and is idempotent") {
    std::mt19937_64 rng(303);
    MSet t;
    for (int i = 0; i < 25; ++i) t.insert(random_key(rng, 0, 400, 3));

    const MSet r1 = reduce_mset(t);
    r1.check_consistency();
    for (Marker m = -1; m <= 401; ++m) CHECK(r1.hash_at_marker(m) == t.hash_at_marker(m));
    // Every key of the reduced set is one of the original piece values.
    for (const MarkedKey& k : table_of(r1)) {
        bool found = false;
        for (const Piece& p : t.pieces()) found = found || p.value == k.hash;
        CHECK(found);
    }
    const MSet r2 = reduce_mset(r1);
    CHECK(table_of(r2) == table_of(r1));
}

TEST_CASE("summarize counts multiplicity and matches the pointwise formula") {
    MSet a, b;
    a.add_valid_region(hash_string("x"), 0, 10);
    a.add_valid_region(hash_string("y"), 5, 20);
    b.add_valid_region(hash_string("x"), 0, 10);

    std::vector<MSet> inputs;
    inputs.push_back(a);
    inputs.push_back(b);
    const MSet s = summarize(inputs);
    s.check_consistency();
    for (Marker m = -2; m <= 22; ++m) {
        const HashValue want =
            reduce(rehash(a.hash_at_marker(m)), rehash(b.hash_at_marker(m)));
        CHECK(s.hash_at_marker(m) == want);
    }
    // Two equal inputs double the rehashed contribution instead of
    // collapsing it.
    const HashValue piece_x = rehash(a.hash_at_marker(2));
    CHECK(s.hash_at_marker(2) == reduce(piece_x, piece_x));
    CHECK(s.hash_at_marker(2) == scalar_mul(2, piece_x));
}

TEST_CASE("summarize of nothing or of empty sets is empty") {
    CHECK(summarize({}).empty());
    std::vector<MSet> inputs(3);  // three empty sets
    const MSet s = summarize(inputs);
    CHECK(s.empty());
    CHECK(s.hash_at_marker(0) == kNullHash);
}

TEST_CASE("equality against markers, sets and fixed hashes") {
    MSet t1, t2;
    const HashValue h = hash_string("h");
    t1.add_valid_region(h, 0, 10);
    t2.add_valid_region(h, 5, 15);

    CHECK(equal_at_marker(t1, t2, -1));
    CHECK(!equal_at_marker(t1, t2, 0));
    CHECK(equal_at_marker(t1, t2, 7));
    CHECK(!equal_at_marker(t1, t2, 12));
    CHECK(equal_at_marker(t1, t2, 15));

    CHECK(equality_vset(t1, t2).to_string() == "[-inf, 0) [5, 10) [15, inf)");

    std::vector<MSet> all{t1, t2, t1};
    CHECK(equality_vset(all).to_string() == "[-inf, 0) [5, 10) [15, inf)");
    CHECK(equal_at_marker(all, 8));
    CHECK(!equal_at_marker(all, 11));

    std::vector<MSet> one{t1};
    CHECK(equality_vset(one) == ValiditySet::everywhere());
    CHECK(equality_vset({}) == ValiditySet::everywhere());

    CHECK(equal_to_hash(t1, h).to_string() == "[0, 10)");
    CHECK(equal_to_hash(t1, kNullHash).to_string() == "[-inf, 0) [10, inf)");
    CHECK(equal_to_hash(MSet{}, kNullHash) == ValiditySet::everywhere());
}

TEST_CASE("keywise union, intersection and difference") {
    MSet t1, t2;
    const HashValue a = hash_string("a"), b = hash_string("b"), c = hash_string("c");
    t1.add_valid_region(a, 0, 10);
    t1.add_valid_region(b, 0, 5);
    t2.add_valid_region(a, 5, 20);
    t2.add_valid_region(c, 0, 5);

    const MSet u = set_union(t1, t2);
    CHECK(u.size() == 3);
    CHECK(u.get(a).vset.to_string() == "[0, 20)");
    CHECK(u.get(b).vset.to_string() == "[0, 5)");
    CHECK(u.get(c).vset.to_string() == "[0, 5)");
    u.check_consistency();

    const MSet i = set_intersection(t1, t2);
    CHECK(i.size() == 1);  // only `a` is present in both with overlap
    CHECK(i.get(a).vset.to_string() == "[5, 10)");

    const MSet d = set_difference(t1, t2);
    CHECK(d.size() == 2);
    CHECK(d.get(a).vset.to_string() == "[0, 5)");
    CHECK(d.get(b).vset.to_string() == "[0, 5)");  // absent from t2: unchanged

    // A key wholly shadowed by t2 disappears.
    MSet shadow;
    shadow.add_valid_region(a, kMarkerNegInf, kMarkerPosInf);
    const MSet d2 = set_difference(t1, shadow);
    CHECK(!d2.exists(a));
    CHECK(d2.get(b).vset.to_string() == "[0, 5)");

    std::vector<MSet> span3{t1, t2, u};
    CHECK(set_union(span3).size() == 3);
    CHECK(set_intersection(span3).get(a).vset.to_string() == "[5, 10)");
    CHECK(set_intersection(std::span<const MSet>{}).empty());
}

TEST_CASE("marker algebra, snapshot and key_set") {
    MSet t;
    const HashValue h1 = hash_string("h1"), h2 = hash_string("h2");
    t.add_valid_region(h1, 0, 5);
    t.add_valid_region(h2, 3, 8);

    const MSet mi = marker_intersection(t, ValiditySet(4, 20));
    CHECK(mi.get(h1).vset.to_string() == "[4, 5)");
    CHECK(mi.get(h2).vset.to_string() == "[4, 8)");
    const MSet mi2 = marker_intersection(t, ValiditySet(100, 200));
    CHECK(mi2.empty());  // all keys dropped

    const MSet mu = marker_union(t, ValiditySet(10, 12));
    CHECK(mu.get(h1).vset.to_string() == "[0, 5) [10, 12)");

    const MSet snap = snapshot(t, 4);
    CHECK(snap.size() == 2);
    CHECK(snap.get(h1).vset == ValiditySet::everywhere());
    const MSet snap2 = snapshot(t, 6);
    CHECK(snap2.size() == 1);
    CHECK(snap2.exists(h2));

    const MSet ks = key_set(t);
    CHECK(ks.size() == 2);
    CHECK(ks.get(h1).vset == ValiditySet::everywhere());

    CHECK(union_of_vsets(t).to_string() == "[0, 8)");
    CHECK(intersection_of_vsets(t).to_string() == "[3, 5)");
    CHECK(union_of_vsets(MSet{}).empty());
    CHECK(intersection_of_vsets(MSet{}).empty());
}

TEST_CASE("random sets agree with the linear-scan oracle everywhere") {
    std::mt19937_64 rng(304);
    for (int trial = 0; trial < 50; ++trial) {
        MSet t;
        std::vector<MarkedKey> keys;
        const int nkeys = 1 + static_cast<int>(rng() % 30);
        for (int k = 0; k < nkeys; ++k) {
            MarkedKey key = random_key(rng, 0, 600, 4);
            t.insert(key);
            keys.push_back(std::move(key));
        }
        // The oracle must see the same per-key union the table performs.
        const auto merged = table_of(t);
        for (Marker bp : t.breakpoints())
            for (Marker m : {bp - 1, bp, bp + 1})
                CHECK(t.hash_at_marker(m) == oracle::naive_hash_at(merged, m));
        for (int q = 0; q < 50; ++q) {
            const Marker m = static_cast<Marker>(rng() % 700) - 50;
            CHECK(t.hash_at_marker(m) == oracle::naive_hash_at(merged, m));
        }
        // Piece values match the oracle at piece starts.
        for (const Piece& p : t.pieces())
            CHECK(p.value == oracle::naive_hash_at(merged, p.lo));
    }
}

TEST_CASE("long mutation sequence keeps the structure consistent") {
    std::mt19937_64 rng(305);
    MSet t;
    std::vector<HashValue> live;
    for (int op = 0; op < 3000; ++op) {
        const auto kind = rng() % 4;
        if (kind <= 1 || live.empty()) {
            const MarkedKey k = random_key(rng, 0, 800, 4);
            t.insert(k);
            live.push_back(k.hash);
        } else if (kind == 2) {
            const HashValue h = live[rng() % live.size()];
            const Marker lo = static_cast<Marker>(rng() % 800);
            t.add_valid_region(h, lo, lo + 1 + static_cast<Marker>(rng() % 80));
        } else {
            const std::size_t i = rng() % live.size();
            t.pop(live[i]);
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        }
        if (op % 500 == 0) t.check_consistency();
    }
    t.check_consistency();
    // Drain completely; the structure must return to pristine empty.
    while (!live.empty()) {
        t.pop(live.back());
        live.pop_back();
    }
    CHECK(t.empty());
    CHECK(t.breakpoints().empty());
    t.check_consistency();
}

TEST_CASE("dump emits one leaf line per breakpoint") {
    MSet t;
    t.add_valid_region(hash_string("A"), 0, 5);
    std::ostringstream os;
    t.dump(os);
    const std::string s = os.str();
    CHECK(s.find("leaf 0\t") != std::string::npos);
    CHECK(s.find("leaf 5\t") != std::string::npos);
}
