#pragma once

#include <cstdint>
#include <vector>

#include "markhash/ibd_graph.hpp"

namespace markhash {

// Gene-descent simulation.  A founding population of `population` diploid
// individuals (2*population founder chromosomes) is bred forward
// `generations` rounds by random mating with replacement; meiosis places
// Poisson(recomb_rate * chrom_length) crossovers at uniform integer
// positions.  Each realization replays descent from the same founders and
// yields one graph: nodes are founder chromosomes, edges are the final
// generation's individuals, attached to the founder node their genome copies
// over each inherited segment [lo, hi).
struct SimParams {
    std::uint32_t population = 1;
    std::uint32_t generations = 0;  // 0: the founders are the final generation
    std::uint32_t realizations = 1;
    double recomb_rate = 0.0;       // per base per meiosis
    std::int64_t chrom_length = 1;
    std::uint64_t seed = 0;
};

// Deterministic for a given parameter set: one mt19937_64 stream drives the
// whole run, and every distribution mapping is implemented here rather than
// taken from <random>'s unspecified ones.
std::vector<IBDGraph> simulate_descent(const SimParams& p);

}  // namespace markhash
