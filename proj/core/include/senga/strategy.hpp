#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "senga/chromosome.hpp"

namespace senga {

/// The six panmictic selection strategies. The first three are conventional
/// baselines; the last three add a programmed form of senescent death.
enum class Strategy {
    AgeBased,     ///< Full generational replacement.
    FitnessBased, ///< Top 60% breed, bottom 60% replaced.
    Hybrid,       ///< Age-based plus a single surviving elite.
    Rapid,        ///< Fitness-based plus a hard maximum age.
    Gradual,      ///< Fitness-based ranking on an age-penalised fitness.
    Soma,         ///< Stage-drawn life budget (reproduction/growth/repair).
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

/// Life-cycle stages of the disposable-soma strategy.
enum class Stage { Reproduction, Growth, Repair };

struct StrategyConfig {
    Strategy variant = Strategy::FitnessBased;
    int pop_size = 30;
    double breed_fraction = 0.6;
    int max_age = 25;          ///< Rapid: members older than this are forced out.
    double divisor_v = 1000.0; ///< Gradual: v in distance + age^3 / v.
    double soma_start_budget = 52.0;
    std::array<double, 3> soma_stage_weights{0.50, 0.25, 0.25}; ///< Reproduction, growth, repair.
    std::array<double, 3> soma_stage_deltas{-0.7, -0.3, 0.6};
    double mutation_rate = 1.0 / 10000.0;

    /// pop_size * breed_fraction, which must round to an even integer.
    int breeder_count() const;

    /// Throws ConfigError on any out-of-range or inconsistent value.
    void validate() const;
};

/// Per-generation death ledger plus the post-step best.
struct GenerationOutcome {
    int deaths_total = 0;                ///< Members replaced this generation.
    std::optional<int> deaths_senescent; ///< Replacements caused by age or budget
                                         ///< exhaustion; absent when the cause is
                                         ///< indistinguishable (gradual).
    int deaths_aged = 0;                 ///< Replaced members that had survived at
                                         ///< least one generation.
    double best_distance = 0.0;          ///< Min raw distance in the post-step population.
    bool improved = false;               ///< Whether best_distance beat best_so_far.
};

/// Adjacent-rank mating over `count` ranked members: (0,1), (2,3), ...
/// Throws PairingError on an odd count.
std::vector<std::pair<int, int>> pair_ranked(int count);

/// Age-penalised fitness used by the gradual strategy: distance + age^3 / v.
/// Throws ConfigError if divisor_v <= 0.
double aged_fitness(double distance, int age, double divisor_v);

/// Categorical stage draw with the configured weights.
Stage sample_stage(const StrategyConfig& cfg, Rng& rng);

/// Freshly randomised population of cfg.pop_size members, sorted ascending by
/// distance. Soma runs start every member at the configured life budget.
std::vector<Chromosome> initial_population(const TspInstance& inst, const StrategyConfig& cfg, Rng& rng);

inline constexpr double kNoBestYet = std::numeric_limits<double>::infinity();

// One generation of each strategy. `pop` must hold cfg.pop_size members
// sorted ascending by raw distance and is left that way. `best_so_far` is the
// run's global best before the step; it only feeds the `improved` flag.
GenerationOutcome step_age_based(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                 Rng& rng, double best_so_far = kNoBestYet);
GenerationOutcome step_fitness_based(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                     Rng& rng, double best_so_far = kNoBestYet);
GenerationOutcome step_hybrid(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                              Rng& rng, double best_so_far = kNoBestYet);
GenerationOutcome step_rapid(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                             Rng& rng, double best_so_far = kNoBestYet);
GenerationOutcome step_gradual(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                               Rng& rng, double best_so_far = kNoBestYet);
GenerationOutcome step_soma(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg, Rng& rng,
                            double best_so_far = kNoBestYet);

/// Dispatch on cfg.variant.
GenerationOutcome step_strategy(const TspInstance& inst, std::vector<Chromosome>& pop, const StrategyConfig& cfg,
                                Rng& rng, double best_so_far = kNoBestYet);

} // namespace senga
