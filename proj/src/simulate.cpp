#include "markhash/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace markhash {

namespace {

// (start, founder) runs, starts ascending from 0, covering [0, chrom_length).
using Chromosome = std::vector<std::pair<Marker, std::uint32_t>>;

struct Individual {
    Chromosome c0, c1;
};

// All randomness flows through these fixed mappings so that a seed pins the
// whole run on any platform.
std::uint64_t rng_below(std::mt19937_64& g, std::uint64_t n) { return g() % n; }

double unit_double(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

std::uint32_t poisson(std::mt19937_64& g, double lambda) {
    const double limit = std::exp(-lambda);
    double p = 1.0;
    std::uint32_t k = 0;
    do {
        ++k;
        p *= unit_double(g);
    } while (p > limit);
    return k - 1;
}

void append_range(const Chromosome& src, Marker lo, Marker hi, Chromosome& out) {
    auto it = std::upper_bound(
        src.begin(), src.end(), lo,
        [](Marker v, const std::pair<Marker, std::uint32_t>& seg) { return v < seg.first; });
    --it;  // segment containing lo; src always starts at 0
    for (; it != src.end() && it->first < hi; ++it) {
        const Marker start = std::max(it->first, lo);
        if (out.empty() || out.back().second != it->second)
            out.emplace_back(start, it->second);
    }
}

Chromosome meiosis(std::mt19937_64& g, const Individual& parent, const SimParams& p) {
    const double lambda = p.recomb_rate * static_cast<double>(p.chrom_length);
    std::uint32_t k = lambda > 0.0 ? poisson(g, lambda) : 0;
    // There are only chrom_length distinct positions to draw from.
    if (k > static_cast<std::uint64_t>(p.chrom_length))
        k = static_cast<std::uint32_t>(p.chrom_length);
    std::set<Marker> cuts;
    while (cuts.size() < k)  // collisions resample
        cuts.insert(static_cast<Marker>(rng_below(g, static_cast<std::uint64_t>(p.chrom_length))));
    std::uint64_t phase = rng_below(g, 2);

    Chromosome out;
    Marker lo = 0;
    auto source = [&](std::uint64_t ph) -> const Chromosome& {
        return (ph & 1) == 0 ? parent.c0 : parent.c1;
    };
    for (Marker cut : cuts) {
        if (lo < cut) append_range(source(phase), lo, cut, out);
        lo = cut;
        ++phase;
    }
    append_range(source(phase), lo, p.chrom_length, out);
    return out;
}

}  // namespace

std::vector<IBDGraph> simulate_descent(const SimParams& p) {
    if (p.population == 0) throw std::invalid_argument("population must be positive");
    if (p.realizations == 0) throw std::invalid_argument("realizations must be positive");
    if (p.chrom_length <= 0) throw std::invalid_argument("chromosome length must be positive");
    if (p.recomb_rate < 0.0) throw std::invalid_argument("recombination rate must be >= 0");

    std::vector<Individual> founders(p.population);
    for (std::uint32_t i = 0; i < p.population; ++i) {
        founders[i].c0 = {{0, 2 * i}};
        founders[i].c1 = {{0, 2 * i + 1}};
    }

    std::mt19937_64 rng(p.seed);
    std::vector<IBDGraph> graphs;
    graphs.reserve(p.realizations);
    for (std::uint32_t r = 0; r < p.realizations; ++r) {
        std::vector<Individual> pop = founders;
        for (std::uint32_t gen = 0; gen < p.generations; ++gen) {
            std::vector<Individual> next(p.population);
            for (std::uint32_t i = 0; i < p.population; ++i) {
                const Individual& pa = pop[rng_below(rng, p.population)];
                const Individual& pb = pop[rng_below(rng, p.population)];
                next[i].c0 = meiosis(rng, pa, p);
                next[i].c1 = meiosis(rng, pb, p);
            }
            pop = std::move(next);
        }

        // Founder chromosomes are the nodes; each final individual is one
        // edge, attached wherever its genome copies that founder.
        std::vector<std::map<std::string, ValiditySet>> attach(2 * p.population);
        for (std::uint32_t i = 0; i < p.population; ++i) {
            const std::string label = "I" + std::to_string(i);
            for (const Chromosome* c : {&pop[i].c0, &pop[i].c1}) {
                for (std::size_t s = 0; s < c->size(); ++s) {
                    const Marker lo = (*c)[s].first;
                    const Marker hi = s + 1 < c->size() ? (*c)[s + 1].first : p.chrom_length;
                    if (lo < hi) attach[(*c)[s].second][label].add(lo, hi);
                }
            }
        }

        IBDGraph g;
        g.id = "sim-" + std::to_string(r);
        g.nodes.reserve(attach.size());
        for (std::size_t f = 0; f < attach.size(); ++f) {
            GraphNode node{"n" + std::to_string(f), {}};
            for (const auto& [label, vs] : attach[f])
                node.edges.push_back(EdgeAttachment{label, vs});
            g.nodes.push_back(std::move(node));
        }
        graphs.push_back(std::move(g));
    }
    return graphs;
}

}  // namespace markhash
