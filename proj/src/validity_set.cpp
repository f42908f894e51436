#include "markhash/validity_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace markhash {

std::string marker_to_string(Marker m) {
    if (m == kMarkerNegInf) return "-inf";
    if (m == kMarkerPosInf) return "inf";
    return std::to_string(m);
}

bool ValiditySet::contains(Marker m) const {
    // First interval with lo > m; its predecessor is the only candidate.
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), m,
                               [](Marker v, const MarkerInterval& iv) { return v < iv.lo; });
    if (it == ivs_.begin()) return false;
    --it;
    return m < it->hi;
}

Marker ValiditySet::min() const {
    if (ivs_.empty()) throw std::out_of_range("min() of empty validity set");
    return ivs_.front().lo;
}

Marker ValiditySet::max() const {
    if (ivs_.empty()) throw std::out_of_range("max() of empty validity set");
    return ivs_.back().hi;
}

void ValiditySet::add(Marker lo, Marker hi) {
    if (lo >= hi) throw std::invalid_argument("interval bounds must satisfy lo < hi");
    // Find the run of intervals that overlap or touch [lo, hi) and splice
    // one merged interval in their place.
    auto first = std::lower_bound(ivs_.begin(), ivs_.end(), lo,
                                  [](const MarkerInterval& iv, Marker v) { return iv.hi < v; });
    auto last = first;
    Marker nlo = lo, nhi = hi;
    while (last != ivs_.end() && last->lo <= hi) {
        nlo = std::min(nlo, last->lo);
        nhi = std::max(nhi, last->hi);
        ++last;
    }
    auto it = ivs_.erase(first, last);
    ivs_.insert(it, MarkerInterval{nlo, nhi});
}

void ValiditySet::clear(Marker lo, Marker hi) {
    if (lo >= hi) throw std::invalid_argument("interval bounds must satisfy lo < hi");
    std::vector<MarkerInterval> out;
    out.reserve(ivs_.size() + 1);
    for (const auto& iv : ivs_) {
        if (iv.hi <= lo || iv.lo >= hi) {
            out.push_back(iv);
            continue;
        }
        if (iv.lo < lo) out.push_back({iv.lo, lo});
        if (iv.hi > hi) out.push_back({hi, iv.hi});
    }
    ivs_ = std::move(out);
}

std::vector<Marker> ValiditySet::breakpoints() const {
    std::vector<Marker> bps;
    bps.reserve(ivs_.size() * 2);
    for (const auto& iv : ivs_) {
        bps.push_back(iv.lo);
        bps.push_back(iv.hi);
    }
    return bps;
}

std::string ValiditySet::to_string() const {
    if (ivs_.empty()) return "(empty)";
    std::string s;
    for (const auto& iv : ivs_) {
        if (!s.empty()) s += ' ';
        s += '[' + marker_to_string(iv.lo) + ", " + marker_to_string(iv.hi) + ')';
    }
    return s;
}

// Boolean combination over the elementary intervals induced by both sets'
// breakpoints.  Touching kept runs fuse, so results are normalized.
ValiditySet combine(const ValiditySet& a, const ValiditySet& b, bool (*keep)(bool, bool)) {
    std::vector<Marker> cuts;
    cuts.reserve((a.ivs_.size() + b.ivs_.size()) * 2);
    for (const auto& iv : a.ivs_) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
    }
    for (const auto& iv : b.ivs_) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    ValiditySet out;
    std::size_t ia = 0, ib = 0;
    Marker run_lo = 0;
    bool in_run = false;
    for (std::size_t k = 0; k + 1 <= cuts.size(); ++k) {
        Marker lo = cuts[k];
        Marker hi = (k + 1 < cuts.size()) ? cuts[k + 1] : kMarkerPosInf;
        while (ia < a.ivs_.size() && a.ivs_[ia].hi <= lo) ++ia;
        while (ib < b.ivs_.size() && b.ivs_[ib].hi <= lo) ++ib;
        bool in_a = ia < a.ivs_.size() && a.ivs_[ia].lo <= lo && lo < a.ivs_[ia].hi;
        bool in_b = ib < b.ivs_.size() && b.ivs_[ib].lo <= lo && lo < b.ivs_[ib].hi;
        bool want = lo < hi && keep(in_a, in_b);
        if (want && !in_run) {
            run_lo = lo;
            in_run = true;
        } else if (!want && in_run) {
            out.ivs_.push_back({run_lo, lo});
            in_run = false;
        }
    }
    if (in_run) out.ivs_.push_back({run_lo, cuts.back()});
    return out;
}

ValiditySet union_of(const ValiditySet& a, const ValiditySet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
}

ValiditySet intersection_of(const ValiditySet& a, const ValiditySet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
}

ValiditySet difference_of(const ValiditySet& a, const ValiditySet& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
}

MarkedKey union_of(const MarkedKey& a, const MarkedKey& b) {
    return {a.hash, union_of(a.vset, b.vset)};
}

MarkedKey intersection_of(const MarkedKey& a, const MarkedKey& b) {
    return {a.hash, intersection_of(a.vset, b.vset)};
}

MarkedKey difference_of(const MarkedKey& a, const MarkedKey& b) {
    return {a.hash, difference_of(a.vset, b.vset)};
}

}  // namespace markhash
