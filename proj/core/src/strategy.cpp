#include "senga/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "senga/errors.hpp"

namespace senga {

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::AgeBased:
        return "age";
    case Strategy::FitnessBased:
        return "fitness";
    case Strategy::Hybrid:
        return "hybrid";
    case Strategy::Rapid:
        return "rapid";
    case Strategy::Gradual:
        return "gradual";
    case Strategy::Soma:
        return "soma";
    }
    return "unknown";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    for (Strategy s : {Strategy::AgeBased, Strategy::FitnessBased, Strategy::Hybrid, Strategy::Rapid,
                       Strategy::Gradual, Strategy::Soma})
        if (strategy_name(s) == name)
            return s;
    return std::nullopt;
}

int StrategyConfig::breeder_count() const {
    return static_cast<int>(std::lround(static_cast<double>(pop_size) * breed_fraction));
}

void StrategyConfig::validate() const {
    if (pop_size < 2)
        throw ConfigError("pop_size must be at least 2");
    if (!(breed_fraction > 0.0 && breed_fraction <= 1.0))
        throw ConfigError("breed_fraction must be in (0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw ConfigError("mutation_rate must be in [0, 1]");
    switch (variant) {
    case Strategy::AgeBased:
    case Strategy::Hybrid:
        if (pop_size % 2 != 0)
            throw ConfigError("pop_size must be even for full-replacement pairing");
        break;
    case Strategy::FitnessBased:
    case Strategy::Rapid:
    case Strategy::Gradual: {
        const double exact = static_cast<double>(pop_size) * breed_fraction;
        const int b = breeder_count();
        if (std::abs(exact - b) > 1e-9 || b <= 0 || b % 2 != 0 || b > pop_size)
            throw ConfigError("pop_size * breed_fraction must be a positive even integer");
        if (variant == Strategy::Rapid && max_age < 0)
            throw ConfigError("max_age must be non-negative");
        if (variant == Strategy::Gradual && !(divisor_v > 0.0))
            throw ConfigError("divisor_v must be positive");
        break;
    }
    case Strategy::Soma: {
        const auto& w = soma_stage_weights;
        if (w[0] < 0.0 || w[1] < 0.0 || w[2] < 0.0 || std::abs(w[0] + w[1] + w[2] - 1.0) > 1e-9)
            throw ConfigError("soma_stage_weights must be non-negative and sum to 1");
        if (!(soma_start_budget > 0.0))
            throw ConfigError("soma_start_budget must be positive");
        break;
    }
    }
}

std::vector<std::pair<int, int>> pair_ranked(int count) {
    if (count < 0 || count % 2 != 0)
        throw PairingError("adjacent-rank pairing needs an even member count, got " + std::to_string(count));
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(count / 2);
    for (int i = 0; i + 1 < count; i += 2)
        pairs.emplace_back(i, i + 1);
    return pairs;
}

double aged_fitness(double distance, int age, double divisor_v) {
    if (!(divisor_v > 0.0))
        throw ConfigError("aged-fitness divisor must be positive");
    const double c = age;
    return distance + c * c * c / divisor_v;
}

Stage sample_stage(const StrategyConfig& cfg, Rng& rng) {
    const double u = rng.unit_real();
    if (u < cfg.soma_stage_weights[0])
        return Stage::Reproduction;
    if (u < cfg.soma_stage_weights[0] + cfg.soma_stage_weights[1])
        return Stage::Growth;
    return Stage::Repair;
}

namespace {

void sort_by_distance(std::vector<Chromosome>& pop) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Chromosome& a, const Chromosome& b) { return a.distance < b.distance; });
}

Chromosome breed_child(const TspInstance& inst, const Chromosome& p1, const Chromosome& p2, const StrategyConfig& cfg,
                       Rng& rng) {
    return mutate(inst, two_point_crossover(inst, p1, p2, rng), cfg.mutation_rate, rng);
}

struct ReplaceStats {
    int senescent_replaced = 0;
    int aged_replaced = 0;
};

// The shared fitness-selection core: breeds the top breeder_count entries of
// `order` pairwise, overwrites the bottom breeder_count entries with the
// offspring, and ages the surviving top. `expired_tail` says how many entries
// at the very end of `order` sit there because their age expired; replacing
// those counts as senescent death.
ReplaceStats breed_and_replace(const TspInstance& inst, std::vector<Chromosome>& pop, std::span<const int> order,
                               const StrategyConfig& cfg, Rng& rng, int expired_tail = 0) {
    const int n = static_cast<int>(order.size());
    const int b = cfg.breeder_count();
    std::vector<Chromosome> children;
    children.reserve(b);
    for (auto [i, j] : pair_ranked(b)) {
        const Chromosome& p1 = pop[order[i]];
        const Chromosome& p2 = pop[order[j]];
        children.push_back(breed_child(inst, p1, p2, cfg, rng));
        children.push_back(breed_child(inst, p1, p2, cfg, rng));
    }
    ReplaceStats stats;
    stats.senescent_replaced = std::min(expired_tail, b);
    for (int r = n - b; r < n; ++r)
        if (pop[order[r]].age >= 1)
            ++stats.aged_replaced;
    for (int r = 0; r < n - b; ++r)
        pop[order[r]].age += 1;
    for (int k = 0; k < b; ++k)
        pop[order[n - b + k]] = std::move(children[k]);
    return stats;
}

std::vector<int> identity_order(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

GenerationOutcome finish(std::vector<Chromosome>& pop, double best_so_far, int deaths_total,
                         std::optional<int> deaths_senescent, int deaths_aged) {
    sort_by_distance(pop);
    GenerationOutcome out;
    out.deaths_total = deaths_total;
    out.deaths_senescent = deaths_senescent;
    out.deaths_aged = deaths_aged;
    out.best_distance = pop.front().distance;
    out.improved = out.best_distance < best_so_far;
    return out;
}

} // namespace

GenerationOutcome step_age_based(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                 Rng& rng, double best_so_far) {
    sort_by_distance(pop);
    const int n = cfg.pop_size;
    int aged_victims = 0;
    for (const Chromosome& ch : pop)
        if (ch.age >= 1)
            ++aged_victims;
    std::vector<Chromosome> next;
    next.reserve(n);
    for (auto [i, j] : pair_ranked(n)) {
        next.push_back(breed_child(inst, pop[i], pop[j], cfg, rng));
        next.push_back(breed_child(inst, pop[i], pop[j], cfg, rng));
    }
    pop = std::move(next);
    return finish(pop, best_so_far, n, 0, aged_victims);
}

GenerationOutcome step_fitness_based(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                     Rng& rng, double best_so_far) {
    sort_by_distance(pop);
    const auto order = identity_order(cfg.pop_size);
    const ReplaceStats stats = breed_and_replace(inst, pop, order, cfg, rng);
    return finish(pop, best_so_far, cfg.breeder_count(), 0, stats.aged_replaced);
}

GenerationOutcome step_hybrid(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                              Rng& rng, double best_so_far) {
    sort_by_distance(pop);
    const int n = cfg.pop_size;
    std::vector<Chromosome> children;
    children.reserve(n);
    for (auto [i, j] : pair_ranked(n)) {
        children.push_back(breed_child(inst, pop[i], pop[j], cfg, rng));
        children.push_back(breed_child(inst, pop[i], pop[j], cfg, rng));
    }
    int aged_victims = 0;
    for (int i = 1; i < n; ++i)
        if (pop[i].age >= 1)
            ++aged_victims;
    // The elite keeps its slot untouched. Its own replacement child is
    // rehoused into the worst member's slot, displacing that slot's child.
    for (int i = 1; i + 1 < n; ++i)
        pop[i] = std::move(children[i]);
    pop[n - 1] = std::move(children[0]);
    return finish(pop, best_so_far, n - 1, 0, aged_victims);
}

GenerationOutcome step_rapid(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                             Rng& rng, double best_so_far) {
    sort_by_distance(pop);
    // Members strictly older than max_age are forced below every non-expired
    // member so the replacement rule removes them regardless of fitness.
    std::vector<int> order;
    std::vector<int> expired;
    order.reserve(pop.size());
    for (int i = 0; i < cfg.pop_size; ++i)
        (pop[i].age > cfg.max_age ? expired : order).push_back(i);
    std::stable_sort(expired.begin(), expired.end(), [&pop](int a, int b) { return pop[a].age > pop[b].age; });
    const int expired_count = static_cast<int>(expired.size());
    order.insert(order.end(), expired.begin(), expired.end());
    const ReplaceStats stats = breed_and_replace(inst, pop, order, cfg, rng, expired_count);
    return finish(pop, best_so_far, cfg.breeder_count(), stats.senescent_replaced, stats.aged_replaced);
}

GenerationOutcome step_gradual(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                               Rng& rng, double best_so_far) {
    sort_by_distance(pop);
    std::vector<double> key(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
        key[i] = aged_fitness(pop[i].distance, pop[i].age, cfg.divisor_v);
    std::vector<int> order = identity_order(cfg.pop_size);
    std::stable_sort(order.begin(), order.end(), [&key](int a, int b) { return key[a] < key[b]; });
    const ReplaceStats stats = breed_and_replace(inst, pop, order, cfg, rng);
    // Age affects every ranking from the first generation on, so an
    // evolutionary death cannot be told apart from a senescent one.
    return finish(pop, best_so_far, cfg.breeder_count(), std::nullopt, stats.aged_replaced);
}

GenerationOutcome step_soma(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg, Rng& rng,
                            double best_so_far) {
    sort_by_distance(pop);
    const int n = cfg.pop_size;

    // 1. Every member draws a stage and pays (or recovers) its budget delta.
    std::vector<Stage> stages(n);
    for (int i = 0; i < n; ++i) {
        stages[i] = sample_stage(cfg, rng);
        pop[i].life_budget += cfg.soma_stage_deltas[static_cast<int>(stages[i])];
    }

    // 2. Exhausted budgets mean immediate senescent death.
    std::vector<char> dead(n, 0);
    int dead_count = 0;
    for (int i = 0; i < n; ++i) {
        if (pop[i].life_budget <= 0.0) {
            dead[i] = 1;
            ++dead_count;
        }
    }

    // 3. Living members in the reproduction stage pair up by rank; an odd
    // count leaves the lowest-ranked reproducer unpaired.
    std::vector<int> reproducers;
    for (int i = 0; i < n; ++i)
        if (!dead[i] && stages[i] == Stage::Reproduction)
            reproducers.push_back(i);
    if (reproducers.size() % 2 != 0)
        reproducers.pop_back();

    std::vector<Chromosome> children;
    children.reserve(reproducers.size());
    for (auto [i, j] : pair_ranked(static_cast<int>(reproducers.size()))) {
        const Chromosome& p1 = pop[reproducers[i]];
        const Chromosome& p2 = pop[reproducers[j]];
        children.push_back(breed_child(inst, p1, p2, cfg, rng));
        children.push_back(breed_child(inst, p1, p2, cfg, rng));
    }
    for (Chromosome& child : children)
        child.life_budget = cfg.soma_start_budget;

    // 4. Offspring fill the dead slots first (best rank first), then evict
    // the worst-ranked living members; the eviction is unconditional, so an
    // offspring can displace its own parent. Surplus offspring are
    // discarded; surplus dead slots are refilled below.
    std::vector<int> targets;
    for (int i = 0; i < n; ++i)
        if (dead[i])
            targets.push_back(i);
    const std::size_t dead_targets = targets.size();
    for (int i = n - 1; i >= 0; --i)
        if (!dead[i])
            targets.push_back(i);

    std::vector<char> replaced(n, 0);
    int aged_deaths = 0;
    int replacements = 0;
    std::size_t k = 0;
    for (; k < children.size() && k < targets.size(); ++k) {
        const int slot = targets[k];
        if (pop[slot].age >= 1)
            ++aged_deaths;
        pop[slot] = std::move(children[k]);
        replaced[slot] = 1;
        ++replacements;
    }

    // 5. Dead slots beyond the offspring supply are filled by crossovers of
    // uniformly random surviving pairs.
    if (k < dead_targets) {
        std::vector<int> alive;
        for (int i = 0; i < n; ++i)
            if (!dead[i])
                alive.push_back(i);
        for (; k < dead_targets; ++k) {
            const int slot = targets[k];
            Chromosome child;
            if (alive.size() >= 2) {
                const int ai = rng.index(static_cast<int>(alive.size()));
                int bi = rng.index(static_cast<int>(alive.size()) - 1);
                if (bi >= ai)
                    ++bi;
                child = breed_child(inst, pop[alive[ai]], pop[alive[bi]], cfg, rng);
            } else {
                // Fewer than two survivors left to mate; reseed randomly.
                child = random_chromosome(inst, rng);
            }
            child.life_budget = cfg.soma_start_budget;
            if (pop[slot].age >= 1)
                ++aged_deaths;
            pop[slot] = std::move(child);
            replaced[slot] = 1;
            ++replacements;
        }
    }

    for (int i = 0; i < n; ++i)
        if (!replaced[i])
            pop[i].age += 1;

    return finish(pop, best_so_far, replacements, dead_count, aged_deaths);
}

GenerationOutcome step_strategy(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                Rng& rng, double best_so_far) {
    switch (cfg.variant) {
    case Strategy::AgeBased:
        return step_age_based(inst, pop, cfg, rng, best_so_far);
    case Strategy::FitnessBased:
        return step_fitness_based(inst, pop, cfg, rng, best_so_far);
    case Strategy::Hybrid:
        return step_hybrid(inst, pop, cfg, rng, best_so_far);
    case Strategy::Rapid:
        return step_rapid(inst, pop, cfg, rng, best_so_far);
    case Strategy::Gradual:
        return step_gradual(inst, pop, cfg, rng, best_so_far);
    case Strategy::Soma:
        return step_soma(inst, pop, cfg, rng, best_so_far);
    }
    throw ConfigError("unknown strategy variant");
}

std::vector<Chromosome> initial_population(const TspInstance& inst, const StrategyConfig& cfg, Rng& rng) {
    std::vector<Chromosome> pop;
    pop.reserve(cfg.pop_size);
    for (int i = 0; i < cfg.pop_size; ++i) {
        Chromosome ch = random_chromosome(inst, rng);
        if (cfg.variant == Strategy::Soma)
            ch.life_budget = cfg.soma_start_budget;
        pop.push_back(std::move(ch));
    }
    sort_by_distance(pop);
    return pop;
}

} // namespace senga
