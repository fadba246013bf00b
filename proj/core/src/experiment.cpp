#include "senga/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "senga/errors.hpp"
#include "senga/rng.hpp"
#include "senga/stats.hpp"

namespace senga {

RunRecord run_single(const TspInstance& inst, const StrategyConfig& cfg, const RunConfig& run_cfg,
                     std::uint64_t seed) {
    cfg.validate();
    if (run_cfg.generations < 0)
        throw ConfigError("generations must be non-negative");
    const auto start = std::chrono::steady_clock::now();

    Rng rng(seed);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);

    RunRecord rec;
    rec.strategy = std::string(strategy_name(cfg.variant));
    rec.seed = seed;
    rec.generations_executed = run_cfg.generations;
    if (cfg.variant != Strategy::Gradual)
        rec.deaths_senescent = 0;

    double best = pop.front().distance;
    rec.best_tour = pop.front().tour;
    rec.last_improvement_generation = 0;
    if (run_cfg.record_trace)
        rec.trace.push_back({0, best});

    for (long g = 1; g <= run_cfg.generations; ++g) {
        const GenerationOutcome out = step_strategy(inst, pop, cfg, rng, best);
        rec.deaths_total += out.deaths_total;
        if (rec.deaths_senescent && out.deaths_senescent)
            *rec.deaths_senescent += *out.deaths_senescent;
        rec.deaths_aged += out.deaths_aged;
        if (out.improved) {
            best = out.best_distance;
            rec.best_tour = pop.front().tour;
            rec.last_improvement_generation = g;
        }
        if (run_cfg.record_trace)
            rec.trace.push_back({g, best});
    }

    rec.final_best_distance = best;
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

namespace {

// Runs `count` independent seeded jobs on up to `jobs` threads. Results land
// at their own index, so the outcome does not depend on scheduling.
template <typename Fn>
std::vector<RunRecord> parallel_runs(int count, int jobs, Fn&& fn) {
    std::vector<RunRecord> records(static_cast<std::size_t>(count));
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i)
            records[static_cast<std::size_t>(i)] = fn(i);
        return records;
    }
    std::atomic<int> cursor{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = cursor.fetch_add(1);
                if (i >= count)
                    return;
                records[static_cast<std::size_t>(i)] = fn(i);
            }
        });
    }
    for (auto& t : workers)
        t.join();
    return records;
}

} // namespace

CampaignSummary summarize(const std::vector<RunRecord>& records, const std::string& fingerprint,
                          std::uint64_t base_seed, long generations) {
    if (records.empty())
        throw ConfigError("cannot summarize an empty campaign");
    CampaignSummary s;
    s.strategy = records.front().strategy;
    s.instance_fingerprint = fingerprint;
    s.rng_name = kRngName;
    s.base_seed = base_seed;
    s.repetitions = static_cast<int>(records.size());
    s.generations = generations;

    std::vector<double> distances;
    distances.reserve(records.size());
    double last_improvement_sum = 0.0;
    double deaths_total_sum = 0.0;
    double frac_total_sum = 0.0, frac_aged_sum = 0.0;
    int frac_total_n = 0, frac_aged_n = 0;
    for (const RunRecord& r : records) {
        distances.push_back(r.final_best_distance);
        last_improvement_sum += static_cast<double>(r.last_improvement_generation);
        deaths_total_sum += static_cast<double>(r.deaths_total);
        if (r.deaths_senescent) {
            if (r.deaths_total > 0) {
                frac_total_sum += static_cast<double>(*r.deaths_senescent) / static_cast<double>(r.deaths_total);
                ++frac_total_n;
            }
            if (r.deaths_aged > 0) {
                frac_aged_sum += static_cast<double>(*r.deaths_senescent) / static_cast<double>(r.deaths_aged);
                ++frac_aged_n;
            }
        }
    }
    s.mean_distance = mean(distances);
    s.std_distance = sample_std(distances);
    s.std_is_degenerate = records.size() < 2;
    const auto [mn, mx] = std::minmax_element(distances.begin(), distances.end());
    s.min_distance = *mn;
    s.max_distance = *mx;
    s.mean_last_improvement = last_improvement_sum / static_cast<double>(records.size());
    s.mean_deaths_total = deaths_total_sum / static_cast<double>(records.size());
    if (frac_total_n > 0)
        s.mean_senescent_fraction_of_total = frac_total_sum / frac_total_n;
    if (frac_aged_n > 0)
        s.mean_senescent_fraction_of_aged = frac_aged_sum / frac_aged_n;
    return s;
}

CampaignResult run_campaign(const TspInstance& inst, const StrategyConfig& cfg, const RunConfig& run_cfg,
                            int repetitions, std::uint64_t base_seed, int jobs) {
    if (repetitions < 1)
        throw ConfigError("repetitions must be at least 1");
    cfg.validate();
    CampaignResult result;
    result.records = parallel_runs(repetitions, jobs, [&](int i) {
        return run_single(inst, cfg, run_cfg, base_seed + static_cast<std::uint64_t>(i));
    });
    result.summary = summarize(result.records, inst.fingerprint(), base_seed, run_cfg.generations);
    return result;
}

CampaignResult run_ca_campaign(const TspInstance& inst, const CaConfig& cfg, int repetitions, std::uint64_t base_seed,
                               int jobs, bool record_trace) {
    if (repetitions < 1)
        throw ConfigError("repetitions must be at least 1");
    cfg.validate();
    CampaignResult result;
    result.records = parallel_runs(repetitions, jobs, [&](int i) {
        return run_ca(inst, cfg, base_seed + static_cast<std::uint64_t>(i), record_trace);
    });
    result.summary = summarize(result.records, inst.fingerprint(), base_seed, cfg.generations);
    return result;
}

std::string_view sweep_param_name(SweepParam p) {
    switch (p) {
    case SweepParam::MaxAge:
        return "max_age";
    case SweepParam::DivisorV:
        return "divisor_v";
    case SweepParam::SomaStartBudget:
        return "soma_start_budget";
    case SweepParam::CaMaxAge:
        return "ca_max_age";
    }
    return "unknown";
}

SweepParam sweep_param_from_name(std::string_view name) {
    for (SweepParam p : {SweepParam::MaxAge, SweepParam::DivisorV, SweepParam::SomaStartBudget, SweepParam::CaMaxAge})
        if (sweep_param_name(p) == name)
            return p;
    throw ConfigError("unknown sweep parameter '" + std::string(name) +
                      "'; expected max_age, divisor_v, soma_start_budget or ca_max_age");
}

SweepTable sweep(const TspInstance& inst, StrategyConfig cfg, CaConfig ca_cfg, const RunConfig& run_cfg,
                 SweepParam param, double lo, double hi, double step, int samples_per_value, std::uint64_t base_seed,
                 int jobs) {
    if (lo > hi)
        throw ConfigError("sweep needs lo <= hi");
    if (!(step > 0.0))
        throw ConfigError("sweep step must be positive");
    if (samples_per_value < 1)
        throw ConfigError("samples_per_value must be at least 1");

    switch (param) {
    case SweepParam::MaxAge:
        cfg.variant = Strategy::Rapid;
        break;
    case SweepParam::DivisorV:
        cfg.variant = Strategy::Gradual;
        break;
    case SweepParam::SomaStartBudget:
        cfg.variant = Strategy::Soma;
        break;
    case SweepParam::CaMaxAge:
        break;
    }

    std::vector<double> values;
    for (int k = 0;; ++k) {
        const double v = lo + step * k;
        if (v > hi + 1e-9)
            break;
        values.push_back(v);
    }

    SweepTable table;
    table.parameter = std::string(sweep_param_name(param));
    table.instance_fingerprint = inst.fingerprint();
    std::uint64_t next_seed = base_seed;
    for (double value : values) {
        StrategyConfig point_cfg = cfg;
        CaConfig point_ca = ca_cfg;
        switch (param) {
        case SweepParam::MaxAge:
            point_cfg.max_age = static_cast<int>(std::lround(value));
            break;
        case SweepParam::DivisorV:
            point_cfg.divisor_v = value;
            break;
        case SweepParam::SomaStartBudget:
            point_cfg.soma_start_budget = value;
            break;
        case SweepParam::CaMaxAge:
            point_ca.max_age = static_cast<int>(std::lround(value));
            break;
        }
        const std::uint64_t seed0 = next_seed;
        next_seed += static_cast<std::uint64_t>(samples_per_value);
        std::vector<RunRecord> records = parallel_runs(samples_per_value, jobs, [&](int i) {
            const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
            return param == SweepParam::CaMaxAge ? run_ca(inst, point_ca, seed)
                                                 : run_single(inst, point_cfg, run_cfg, seed);
        });
        std::vector<double> distances;
        distances.reserve(records.size());
        for (const RunRecord& r : records)
            distances.push_back(r.final_best_distance);
        table.rows.push_back({value, samples_per_value, mean(distances), sample_std(distances)});
    }

    const auto best = std::min_element(table.rows.begin(), table.rows.end(),
                                       [](const SweepRow& a, const SweepRow& b) {
                                           return a.mean_distance < b.mean_distance;
                                       });
    table.argmin_value = best->value;
    return table;
}

ComparisonReport compare(const std::vector<CampaignSummary>& summaries) {
    if (summaries.size() < 2)
        throw ComparisonError("need at least two campaign summaries to compare");
    for (const CampaignSummary& s : summaries)
        if (s.instance_fingerprint != summaries.front().instance_fingerprint)
            throw ComparisonError("summaries cover different instances (fingerprint " + s.instance_fingerprint +
                                  " vs " + summaries.front().instance_fingerprint + ")");

    ComparisonReport report;
    std::vector<std::size_t> order(summaries.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&summaries](std::size_t a, std::size_t b) {
        return summaries[a].mean_distance < summaries[b].mean_distance;
    });
    for (std::size_t i : order)
        report.order_by_mean.push_back(summaries[i].strategy);

    for (std::size_t i = 0; i < summaries.size(); ++i) {
        for (std::size_t j = i + 1; j < summaries.size(); ++j) {
            const CampaignSummary& a = summaries[i];
            const CampaignSummary& b = summaries[j];
            PairComparison pc;
            pc.a = a.strategy;
            pc.b = b.strategy;
            pc.mean_a = a.mean_distance;
            pc.mean_b = b.mean_distance;
            pc.diff_percent = 100.0 * (a.mean_distance - b.mean_distance) / b.mean_distance;
            pc.improvement_percent_of_b = 100.0 * (a.mean_distance - b.mean_distance) / a.mean_distance;
            const WelchResult w = welch_t_test(a.mean_distance, a.std_distance, a.repetitions, b.mean_distance,
                                               b.std_distance, b.repetitions);
            pc.t = w.t;
            pc.df = w.df;
            pc.p_two_sided = w.p_two_sided;
            pc.degenerate = w.degenerate;
            report.pairs.push_back(std::move(pc));
        }
    }
    return report;
}

} // namespace senga
