#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <climits>
#include <set>

#include "senga/errors.hpp"
#include "senga/strategy.hpp"

using namespace senga;

namespace {

const TspInstance& instance100() {
    static const TspInstance inst = TspInstance::generate(1, 100, 1000.0);
    return inst;
}

StrategyConfig config_for(Strategy variant) {
    StrategyConfig cfg;
    cfg.variant = variant;
    return cfg;
}

bool same_population(const std::vector<Chromosome>& a, const std::vector<Chromosome>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].tour != b[i].tour || a[i].age != b[i].age || a[i].distance != b[i].distance ||
            a[i].life_budget != b[i].life_budget)
            return false;
    return true;
}

std::multiset<double> distances_of(const std::vector<Chromosome>& pop) {
    std::multiset<double> out;
    for (const Chromosome& ch : pop)
        out.insert(ch.distance);
    return out;
}

} // namespace

TEST_CASE("adjacent-rank pairing") {
    CHECK(pair_ranked(4) == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    CHECK(pair_ranked(2) == std::vector<std::pair<int, int>>{{0, 1}});
    const auto pairs = pair_ranked(30);
    REQUIRE(pairs.size() == 15);
    std::set<int> seen;
    for (auto [a, b] : pairs) {
        seen.insert(a);
        seen.insert(b);
    }
    CHECK(seen.size() == 30);
    CHECK_THROWS_AS(pair_ranked(5), PairingError);
}

TEST_CASE("aged fitness is exact") {
    CHECK(aged_fitness(800.0, 0, 1000.0) == 800.0);
    CHECK(aged_fitness(800.0, 10, 1000.0) == 801.0);
    CHECK(aged_fitness(800.0, 100, 1000.0) == 1800.0);
    CHECK_THROWS_AS(aged_fitness(800.0, 10, 0.0), ConfigError);
    CHECK_THROWS_AS(aged_fitness(800.0, 10, -1.0), ConfigError);
}

TEST_CASE("aged fitness is strictly increasing in age and distance") {
    for (int age = 1; age < 200; ++age)
        CHECK(aged_fitness(800.0, age, 1000.0) > aged_fitness(800.0, age - 1, 1000.0));
    CHECK(aged_fitness(801.0, 5, 1000.0) > aged_fitness(800.0, 5, 1000.0));
    // An old strong member can still be outranked by a young weaker one.
    CHECK(aged_fitness(800.0, 50, 1000.0) > aged_fitness(900.0, 0, 1000.0));
}

TEST_CASE("config validation rejects broken setups") {
    StrategyConfig cfg;
    cfg.breed_fraction = 0.5; // 15 breeders: odd
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = StrategyConfig{};
    cfg.variant = Strategy::Gradual;
    cfg.divisor_v = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = StrategyConfig{};
    cfg.variant = Strategy::Soma;
    cfg.soma_stage_weights = {0.6, 0.25, 0.25};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = StrategyConfig{};
    cfg.mutation_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(StrategyConfig{}.breeder_count() == 18);
}

TEST_CASE("age-based step replaces the whole population") {
    const TspInstance& inst = instance100();
    const StrategyConfig cfg = config_for(Strategy::AgeBased);
    Rng rng(21);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
    for (Chromosome& ch : pop)
        ch.age = 7; // mark the incumbents
    const GenerationOutcome out = step_age_based(inst, pop, cfg, rng);
    CHECK(out.deaths_total == 30);
    CHECK(out.deaths_senescent == 0);
    CHECK(pop.size() == 30);
    for (const Chromosome& ch : pop)
        CHECK(ch.age == 0); // no marked member survived
}

TEST_CASE("age-based step over an identical population keeps its distance") {
    const TspInstance& inst = instance100();
    StrategyConfig cfg = config_for(Strategy::AgeBased);
    cfg.mutation_rate = 0.0;
    Rng rng(22);
    const Chromosome seed_member = random_chromosome(inst, rng);
    std::vector<Chromosome> pop(30, seed_member);
    step_age_based(inst, pop, cfg, rng);
    for (const Chromosome& ch : pop)
        CHECK(ch.distance == seed_member.distance);
}

TEST_CASE("fitness-based step keeps the best and replaces the bottom 60%") {
    const TspInstance& inst = instance100();
    StrategyConfig cfg = config_for(Strategy::FitnessBased);
    Rng rng(23);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
    const std::vector<int> best_tour = pop.front().tour;

    SUBCASE("pre-step best survives") {
        const GenerationOutcome out = step_fitness_based(inst, pop, cfg, rng);
        CHECK(out.deaths_total == 18);
        CHECK(out.deaths_senescent == 0);
        const bool present = std::any_of(pop.begin(), pop.end(), [&](const Chromosome& ch) {
            return ch.tour == best_tour && ch.age == 1;
        });
        CHECK(present);
    }

    SUBCASE("with mutation off, the top 12 distances all persist") {
        cfg.mutation_rate = 0.0;
        std::vector<double> top12;
        for (int i = 0; i < 12; ++i)
            top12.push_back(pop[static_cast<std::size_t>(i)].distance);
        step_fitness_based(inst, pop, cfg, rng);
        const std::multiset<double> post = distances_of(pop);
        for (double d : top12)
            CHECK(post.count(d) >= 1);
    }
}

TEST_CASE("hybrid step keeps the elite bit-identical and kills 29") {
    const TspInstance& inst = instance100();
    const StrategyConfig cfg = config_for(Strategy::Hybrid);
    Rng rng(24);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
    const Chromosome elite = pop.front();
    const GenerationOutcome out = step_hybrid(inst, pop, cfg, rng);
    CHECK(out.deaths_total == 29);
    CHECK(out.deaths_senescent == 0);
    int elite_copies = 0;
    for (const Chromosome& ch : pop)
        if (ch.tour == elite.tour && ch.age == elite.age && ch.distance == elite.distance)
            ++elite_copies;
    CHECK(elite_copies >= 1);

    // Best-so-far never worsens across generations under elitism.
    double best = pop.front().distance;
    for (int g = 0; g < 200; ++g) {
        const GenerationOutcome o = step_hybrid(inst, pop, cfg, rng, best);
        CHECK(o.best_distance <= best);
        if (o.improved)
            best = o.best_distance;
    }
}

TEST_CASE("rapid demotes only members strictly over the age limit") {
    const TspInstance& inst = instance100();
    StrategyConfig cfg = config_for(Strategy::Rapid);
    cfg.max_age = 25;
    cfg.mutation_rate = 0.0;

    SUBCASE("age equal to the limit survives at the top") {
        Rng rng(25);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        pop.front().age = 25;
        const std::vector<int> best_tour = pop.front().tour;
        step_rapid(inst, pop, cfg, rng);
        const bool present = std::any_of(pop.begin(), pop.end(),
                                         [&](const Chromosome& ch) { return ch.tour == best_tour && ch.age == 26; });
        CHECK(present);
    }

    SUBCASE("age past the limit dies despite being the global best") {
        Rng rng(26);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        pop.front().age = 26;
        const double best_distance = pop.front().distance;
        const GenerationOutcome out = step_rapid(inst, pop, cfg, rng);
        CHECK(out.deaths_senescent == 1);
        const bool present = std::any_of(pop.begin(), pop.end(),
                                         [&](const Chromosome& ch) { return ch.distance == best_distance; });
        CHECK_FALSE(present);
    }
}

TEST_CASE("rapid with an unreachable age limit replays fitness-based bit for bit") {
    const TspInstance& inst = instance100();
    StrategyConfig fitness_cfg = config_for(Strategy::FitnessBased);
    StrategyConfig rapid_cfg = config_for(Strategy::Rapid);
    rapid_cfg.max_age = INT_MAX;

    Rng rng_a(27), rng_b(27);
    std::vector<Chromosome> pop_a = initial_population(inst, fitness_cfg, rng_a);
    std::vector<Chromosome> pop_b = initial_population(inst, rapid_cfg, rng_b);
    REQUIRE(same_population(pop_a, pop_b));
    for (int g = 0; g < 300; ++g) {
        const GenerationOutcome oa = step_fitness_based(inst, pop_a, fitness_cfg, rng_a);
        const GenerationOutcome ob = step_rapid(inst, pop_b, rapid_cfg, rng_b);
        REQUIRE(same_population(pop_a, pop_b));
        CHECK(oa.best_distance == ob.best_distance);
        CHECK(ob.deaths_senescent == 0);
    }
}

TEST_CASE("gradual ranks by raw distance while every age is zero") {
    const TspInstance& inst = instance100();
    StrategyConfig fitness_cfg = config_for(Strategy::FitnessBased);
    StrategyConfig gradual_cfg = config_for(Strategy::Gradual);

    Rng rng_a(28), rng_b(28);
    std::vector<Chromosome> pop_a = initial_population(inst, fitness_cfg, rng_a);
    std::vector<Chromosome> pop_b = initial_population(inst, gradual_cfg, rng_b);
    const GenerationOutcome oa = step_fitness_based(inst, pop_a, fitness_cfg, rng_a);
    const GenerationOutcome ob = step_gradual(inst, pop_b, gradual_cfg, rng_b);
    CHECK(same_population(pop_a, pop_b));
    CHECK(oa.best_distance == ob.best_distance);
    CHECK_FALSE(ob.deaths_senescent.has_value());

    // With an effectively infinite divisor the equivalence holds forever.
    gradual_cfg.divisor_v = 1e30;
    for (int g = 0; g < 200; ++g) {
        step_fitness_based(inst, pop_a, fitness_cfg, rng_a);
        step_gradual(inst, pop_b, gradual_cfg, rng_b);
        REQUIRE(same_population(pop_a, pop_b));
    }
}

TEST_CASE("gradual lets a dominant member persist through old age") {
    const TspInstance& inst = instance100();
    StrategyConfig cfg = config_for(Strategy::Gradual);
    cfg.mutation_rate = 0.0;
    Rng rng(29);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
    // A nearest-neighbor tour sits far below anything 50 generations of
    // breeding random tours can reach, so even the age penalty (125 at age
    // 50) cannot squeeze it out of the survivor set.
    Chromosome dominant;
    {
        std::vector<char> used(100, 0);
        int current = 0;
        used[0] = 1;
        dominant.tour.push_back(0);
        for (int step = 1; step < 100; ++step) {
            int nearest = -1;
            for (int c = 0; c < 100; ++c)
                if (!used[c] && (nearest < 0 || inst.distance(current, c) < inst.distance(current, nearest)))
                    nearest = c;
            used[nearest] = 1;
            dominant.tour.push_back(nearest);
            current = nearest;
        }
        dominant.distance = inst.tour_length(dominant.tour);
    }
    pop.front() = dominant;
    REQUIRE(dominant.distance + 50.0 * 50.0 * 50.0 / cfg.divisor_v < pop[1].distance);
    for (int g = 0; g < 50; ++g) {
        step_gradual(inst, pop, cfg, rng);
        const bool present = std::any_of(pop.begin(), pop.end(),
                                         [&](const Chromosome& ch) { return ch.tour == dominant.tour; });
        REQUIRE(present);
    }
}

TEST_CASE("stage draws match the configured weights") {
    StrategyConfig cfg = config_for(Strategy::Soma);
    Rng rng(30);
    int counts[3] = {0, 0, 0};
    const int draws = 1000000;
    double delta_sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const Stage s = sample_stage(cfg, rng);
        ++counts[static_cast<int>(s)];
        delta_sum += cfg.soma_stage_deltas[static_cast<std::size_t>(s)];
    }
    CHECK(counts[0] / static_cast<double>(draws) == doctest::Approx(0.50).epsilon(0.006));
    CHECK(counts[1] / static_cast<double>(draws) == doctest::Approx(0.25).epsilon(0.012));
    CHECK(counts[2] / static_cast<double>(draws) == doctest::Approx(0.25).epsilon(0.012));
    // Expected drain per generation from the stated weights and deltas.
    const double expected = 0.5 * -0.7 + 0.25 * -0.3 + 0.25 * 0.6;
    CHECK(expected == doctest::Approx(-0.275).epsilon(1e-12));
    CHECK(delta_sum / draws == doctest::Approx(-0.275).epsilon(0.02));
}

TEST_CASE("soma budgets drive senescent death") {
    const TspInstance& inst = instance100();

    SUBCASE("a near-empty budget dies on a reproduction draw") {
        StrategyConfig cfg = config_for(Strategy::Soma);
        cfg.soma_stage_weights = {1.0, 0.0, 0.0}; // everyone reproduces
        Rng rng(31);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        pop.back().life_budget = 0.5;
        const double doomed = pop.back().distance;
        const GenerationOutcome out = step_soma(inst, pop, cfg, rng);
        CHECK(out.deaths_senescent == 1);
        CHECK(pop.size() == 30);
        const bool present = std::any_of(pop.begin(), pop.end(),
                                         [&](const Chromosome& ch) { return ch.distance == doomed; });
        CHECK_FALSE(present);
    }

    SUBCASE("a repair draw rescues the same budget") {
        StrategyConfig cfg = config_for(Strategy::Soma);
        cfg.soma_stage_weights = {0.0, 0.0, 1.0}; // everyone repairs
        Rng rng(32);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        pop.back().life_budget = 0.5;
        const GenerationOutcome out = step_soma(inst, pop, cfg, rng);
        CHECK(out.deaths_senescent == 0);
        CHECK(out.deaths_total == 0); // nobody reproduced, nobody died
        for (const Chromosome& ch : pop)
            CHECK(ch.age == 1);
    }

    SUBCASE("all-reproducers keep the population size through full turnover") {
        StrategyConfig cfg = config_for(Strategy::Soma);
        cfg.soma_stage_weights = {1.0, 0.0, 0.0};
        Rng rng(33);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        const GenerationOutcome out = step_soma(inst, pop, cfg, rng);
        CHECK(pop.size() == 30);
        // 15 pairs yield 30 offspring, which evict the whole generation.
        CHECK(out.deaths_total == 30);
        CHECK(out.deaths_senescent == 0);
        for (const Chromosome& ch : pop) {
            CHECK(ch.age == 0);
            CHECK(ch.life_budget == doctest::Approx(52.0).epsilon(1e-12));
        }
    }

    SUBCASE("the best member survives while it keeps reproducing") {
        StrategyConfig cfg = config_for(Strategy::Soma);
        cfg.soma_stage_weights = {1.0, 0.0, 0.0};
        Rng rng(37);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        // 30 reproducers pair into 15 couples whose 30 offspring replace
        // everyone, so force an odd count: kill one member's budget.
        pop.back().life_budget = 0.1;
        const std::vector<int> best_tour = pop.front().tour;
        const GenerationOutcome out = step_soma(inst, pop, cfg, rng);
        CHECK(out.deaths_senescent == 1);
        // 29 reproducers -> 14 pairs -> 28 offspring; 1 dead slot plus the
        // 27 worst living slots are replaced, sparing the top of the rank.
        CHECK(out.deaths_total == 28);
        const bool present = std::any_of(pop.begin(), pop.end(),
                                         [&](const Chromosome& ch) { return ch.tour == best_tour; });
        CHECK(present);
    }
}

TEST_CASE("soma cannot kill a fresh population before generation 75") {
    const TspInstance& inst = instance100();
    const StrategyConfig cfg = config_for(Strategy::Soma);
    // Worst-case drain is 0.7 per generation, so 52 lasts ceil(52/0.7) - 1 =
    // 74 full generations.
    for (std::uint64_t seed : {34u, 35u, 36u}) {
        Rng rng(seed);
        std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
        for (int g = 1; g <= 74; ++g) {
            const GenerationOutcome out = step_soma(inst, pop, cfg, rng);
            REQUIRE(out.deaths_senescent == 0);
        }
    }
}

TEST_CASE("every strategy conserves population size and stays deterministic") {
    const TspInstance& inst = instance100();
    for (Strategy variant : {Strategy::AgeBased, Strategy::FitnessBased, Strategy::Hybrid, Strategy::Rapid,
                             Strategy::Gradual, Strategy::Soma}) {
        const StrategyConfig cfg = config_for(variant);
        Rng rng_a(40), rng_b(40);
        std::vector<Chromosome> pop_a = initial_population(inst, cfg, rng_a);
        std::vector<Chromosome> pop_b = initial_population(inst, cfg, rng_b);
        for (int g = 0; g < 60; ++g) {
            const GenerationOutcome oa = step_strategy(inst, pop_a, cfg, rng_a);
            step_strategy(inst, pop_b, cfg, rng_b);
            REQUIRE(pop_a.size() == 30);
            REQUIRE(same_population(pop_a, pop_b));
            if (oa.deaths_senescent)
                CHECK(*oa.deaths_senescent <= oa.deaths_total);
            CHECK(std::is_sorted(pop_a.begin(), pop_a.end(),
                                 [](const Chromosome& x, const Chromosome& y) { return x.distance < y.distance; }));
        }
    }
}
