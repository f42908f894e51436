#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "markhash/hash_value.hpp"

namespace markhash {

// Marker axis: int64 with the extremes reserved as the infinities.  No
// arithmetic is ever performed on markers, only ordering.
using Marker = std::int64_t;
inline constexpr Marker kMarkerNegInf = INT64_MIN;
inline constexpr Marker kMarkerPosInf = INT64_MAX;

std::string marker_to_string(Marker m);  // "-inf" / "inf" / decimal

// Half-open interval [lo, hi) with lo < hi.
struct MarkerInterval {
    Marker lo;
    Marker hi;
    friend bool operator==(const MarkerInterval&, const MarkerInterval&) = default;
};

// A set of markers stored as sorted, disjoint, non-touching half-open
// intervals.  Default-constructed is empty; everywhere() is [-inf, inf).
class ValiditySet {
public:
    ValiditySet() = default;
    ValiditySet(Marker lo, Marker hi) { add(lo, hi); }
    static ValiditySet everywhere() { return ValiditySet(kMarkerNegInf, kMarkerPosInf); }

    bool empty() const { return ivs_.empty(); }
    std::span<const MarkerInterval> intervals() const { return ivs_; }
    std::size_t interval_count() const { return ivs_.size(); }

    bool contains(Marker m) const;

    // Throw std::out_of_range when empty.
    Marker min() const;  // lo of the first interval
    Marker max() const;  // hi of the last interval (an exclusive bound)

    void add(Marker lo, Marker hi);    // union with [lo, hi)
    void clear(Marker lo, Marker hi);  // subtract [lo, hi)

    // All interval endpoints, ascending.
    std::vector<Marker> breakpoints() const;

    std::string to_string() const;  // "[0, 5) [9, inf)" or "(empty)"

    friend bool operator==(const ValiditySet&, const ValiditySet&) = default;

private:
    std::vector<MarkerInterval> ivs_;
    friend ValiditySet combine(const ValiditySet&, const ValiditySet&, bool (*)(bool, bool));
};

ValiditySet union_of(const ValiditySet& a, const ValiditySet& b);
ValiditySet intersection_of(const ValiditySet& a, const ValiditySet& b);
ValiditySet difference_of(const ValiditySet& a, const ValiditySet& b);

// A hash value paired with the marker set where it holds.
struct MarkedKey {
    HashValue hash;
    ValiditySet vset;

    bool valid_at(Marker m) const { return vset.contains(m); }
    // The key's hash where valid, the null hash elsewhere.
    HashValue value_at(Marker m) const { return valid_at(m) ? hash : kNullHash; }

    friend bool operator==(const MarkedKey&, const MarkedKey&) = default;
};

// Marker-set algebra lifted to keys; the hash is carried from `a`.
MarkedKey union_of(const MarkedKey& a, const MarkedKey& b);
MarkedKey intersection_of(const MarkedKey& a, const MarkedKey& b);
MarkedKey difference_of(const MarkedKey& a, const MarkedKey& b);

}  // namespace markhash
