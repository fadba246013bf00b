#include "senga/chromosome.hpp"

#include <cassert>
#include <numeric>

#include "senga/errors.hpp"

namespace senga {

Chromosome random_chromosome(const TspInstance& inst, Rng& rng) {
    Chromosome ch;
    ch.tour.resize(inst.size());
    std::iota(ch.tour.begin(), ch.tour.end(), 0);
    shuffle_in_place(ch.tour, rng);
    ch.distance = inst.tour_length_unchecked(ch.tour);
    return ch;
}

Chromosome order_crossover_with_cuts(const TspInstance& inst, const Chromosome& p1, const Chromosome& p2, int cut_a,
                                     int cut_b) {
    const int n = static_cast<int>(p1.tour.size());
    assert(0 <= cut_a && cut_a < cut_b && cut_b <= n);

    Chromosome child;
    child.tour.resize(n);
    std::vector<char> present(n, 0);
    for (int i = cut_a; i < cut_b; ++i) {
        child.tour[i] = p1.tour[i];
        present[p1.tour[i]] = 1;
    }
    // Remaining positions fill in ascending order, skipping the segment.
    int fill = cut_a == 0 ? cut_b : 0;
    for (int city : p2.tour) {
        if (present[city])
            continue;
        child.tour[fill] = city;
        ++fill;
        if (fill == cut_a)
            fill = cut_b;
        if (fill >= n)
            break;
    }
    child.distance = inst.tour_length_unchecked(child.tour);
    return child;
}

Chromosome two_point_crossover(const TspInstance& inst, const Chromosome& p1, const Chromosome& p2, Rng& rng) {
    if (p1.tour.size() != p2.tour.size())
        throw InvalidMatingError("cannot mate parents with " + std::to_string(p1.tour.size()) + " and " +
                                 std::to_string(p2.tour.size()) + " cities");
    const int n = static_cast<int>(p1.tour.size());
    const auto [a, b] = rng.distinct_sorted_pair(n + 1);
    return order_crossover_with_cuts(inst, p1, p2, a, b);
}

Chromosome mutate(const TspInstance& inst, Chromosome ch, double per_gene_rate, Rng& rng) {
    assert(per_gene_rate >= 0.0 && per_gene_rate <= 1.0);
    const int n = static_cast<int>(ch.tour.size());
    if (n < 2)
        return ch;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
        if (!rng.chance(per_gene_rate))
            continue;
        int j = rng.index(n - 1);
        if (j >= i)
            ++j;
        std::swap(ch.tour[i], ch.tour[j]);
        changed = true;
    }
    if (changed)
        ch.distance = inst.tour_length_unchecked(ch.tour);
    return ch;
}

Chromosome forced_single_mutation(const TspInstance& inst, const Chromosome& ch, Rng& rng) {
    const int n = static_cast<int>(ch.tour.size());
    assert(n >= 2);
    Chromosome child;
    child.tour = ch.tour;
    const auto [i, j] = rng.distinct_sorted_pair(n);
    std::swap(child.tour[i], child.tour[j]);
    child.distance = inst.tour_length_unchecked(child.tour);
    return child;
}

} // namespace senga
