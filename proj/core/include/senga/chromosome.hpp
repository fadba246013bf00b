#pragma once

#include <vector>

#include "senga/rng.hpp"
#include "senga/tsp.hpp"

namespace senga {

/// A candidate tour plus the age bookkeeping used by the senescent
/// strategies. Chromosomes are plain values; the operators below are pure
/// given an rng stream.
struct Chromosome {
    std::vector<int> tour;
    double distance = 0.0;    ///< Cached closed-tour length, kept in sync with tour.
    int age = 0;              ///< Generations survived; offspring start at 0.
    double life_budget = 0.0; ///< Remaining lifespan, used by the disposable-soma strategy.
};

/// Uniformly random permutation at age 0.
Chromosome random_chromosome(const TspInstance& inst, Rng& rng);

/// Order crossover with explicit cut points 0 <= a < b <= n: the child keeps
/// p1's segment [a, b) in place and fills the remaining positions, in
/// ascending position order, with p2's cities in p2's order, skipping cities
/// already present. The child starts at age 0.
Chromosome order_crossover_with_cuts(const TspInstance& inst, const Chromosome& p1, const Chromosome& p2, int cut_a,
                                     int cut_b);

/// Two-point order crossover: cut points are drawn as an unordered pair of
/// distinct values in 0..n, sorted ascending ((0, n) copies p1 whole).
/// Throws InvalidMatingError if the parents have different tour sizes.
Chromosome two_point_crossover(const TspInstance& inst, const Chromosome& p1, const Chromosome& p2, Rng& rng);

/// Per-gene point mutation: each position independently swaps with a
/// uniformly chosen other position with probability per_gene_rate. Age and
/// life budget carry through; the cached distance is refreshed if any swap
/// fired.
Chromosome mutate(const TspInstance& inst, Chromosome ch, double per_gene_rate, Rng& rng);

/// Exactly one swap of two distinct positions; the result is a fresh
/// individual at age 0 (asexual reproduction).
Chromosome forced_single_mutation(const TspInstance& inst, const Chromosome& ch, Rng& rng);

} // namespace senga
