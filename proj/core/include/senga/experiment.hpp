#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "senga/run_record.hpp"
#include "senga/strategy.hpp"
#include "senga/torus_ca.hpp"
#include "senga/tsp.hpp"

namespace senga {

struct RunConfig {
    long generations = 20000; ///< Fixed budget; runs never stop early.
    bool record_trace = false;
};

/// Per-strategy aggregates over a campaign's runs.
struct CampaignSummary {
    std::string strategy;
    std::string instance_fingerprint;
    std::string rng_name;
    std::uint64_t base_seed = 0;
    int repetitions = 0;
    long generations = 0;
    double mean_distance = 0.0;
    double std_distance = 0.0; ///< Sample (n-1) deviation; 0 for a single run.
    bool std_is_degenerate = false;
    double min_distance = 0.0;
    double max_distance = 0.0;
    double mean_last_improvement = 0.0;
    double mean_deaths_total = 0.0;
    /// Senescent share of all replacements, averaged over runs; absent when
    /// the strategy cannot attribute deaths (gradual).
    std::optional<double> mean_senescent_fraction_of_total;
    /// Senescent share of removals whose victim had survived at least one
    /// generation. Newborn cullings dominate raw replacement counts, so this
    /// is the fraction comparable across aging studies.
    std::optional<double> mean_senescent_fraction_of_aged;
};

struct CampaignResult {
    CampaignSummary summary;
    std::vector<RunRecord> records;
};

/// One seeded run: a fresh population stepped exactly run_cfg.generations
/// times. Generation 0 is the random initial population; the best-so-far
/// starts there.
RunRecord run_single(const TspInstance& inst, const StrategyConfig& cfg, const RunConfig& run_cfg, std::uint64_t seed);

/// `repetitions` independent runs; run i uses seed base_seed + i. Runs may
/// execute on up to `jobs` threads; results are identical regardless.
CampaignResult run_campaign(const TspInstance& inst, const StrategyConfig& cfg, const RunConfig& run_cfg,
                            int repetitions, std::uint64_t base_seed, int jobs = 1);

/// Campaign over the cellular-automata engine.
CampaignResult run_ca_campaign(const TspInstance& inst, const CaConfig& cfg, int repetitions, std::uint64_t base_seed,
                               int jobs = 1, bool record_trace = false);

/// Aggregation used by the campaign runners, exposed for auditing.
CampaignSummary summarize(const std::vector<RunRecord>& records, const std::string& fingerprint,
                          std::uint64_t base_seed, long generations);

enum class SweepParam { MaxAge, DivisorV, SomaStartBudget, CaMaxAge };

std::string_view sweep_param_name(SweepParam p);

/// Parses one of "max_age", "divisor_v", "soma_start_budget", "ca_max_age".
/// Throws ConfigError for anything else.
SweepParam sweep_param_from_name(std::string_view name);

struct SweepRow {
    double value = 0.0;
    int samples = 0;
    double mean_distance = 0.0;
    double std_distance = 0.0;
};

struct SweepTable {
    std::string parameter;
    std::string instance_fingerprint;
    std::vector<SweepRow> rows; ///< Parameter values strictly increasing.
    double argmin_value = 0.0;  ///< Parameter value with the lowest mean distance.
};

/// Runs samples_per_value seeded runs at every parameter value in
/// lo, lo+step, ..., <= hi. Seeds advance by one per run across the whole
/// sweep. MaxAge/DivisorV/SomaStartBudget sweep the matching panmictic
/// strategy; CaMaxAge sweeps the grid engine's age limit.
SweepTable sweep(const TspInstance& inst, StrategyConfig cfg, CaConfig ca_cfg, const RunConfig& run_cfg,
                 SweepParam param, double lo, double hi, double step, int samples_per_value, std::uint64_t base_seed,
                 int jobs = 1);

struct PairComparison {
    std::string a;
    std::string b;
    double mean_a = 0.0;
    double mean_b = 0.0;
    /// 100 * (mean_a - mean_b) / mean_b.
    double diff_percent = 0.0;
    /// How much better (smaller) b's mean is as a share of a's: 100 * (mean_a - mean_b) / mean_a.
    double improvement_percent_of_b = 0.0;
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
    bool degenerate = false;
};

struct ComparisonReport {
    std::vector<std::string> order_by_mean; ///< Strategy labels, best (lowest mean) first.
    std::vector<PairComparison> pairs;
};

/// Pairwise comparison of two or more summaries over one instance. Throws
/// ComparisonError when instance fingerprints differ.
ComparisonReport compare(const std::vector<CampaignSummary>& summaries);

// ---- report files ------------------------------------------------------

/// Writes one CSV row per record:
/// strategy,seed,final_best_distance,last_improvement_generation,generations,
/// deaths_total,deaths_senescent,wall_time_s. Reals carry 6 decimals; an
/// absent senescent count is an empty field.
void write_run_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);

/// Parses a file written by write_run_csv (traces and tours are not stored
/// in the CSV).
std::vector<RunRecord> read_run_csv(const std::filesystem::path& path);

/// Summary as a JSON document carrying the aggregates, a config echo, the
/// instance fingerprint, the rng identifier and the library version, plus the
/// best run's tour.
void write_summary_json(const std::filesystem::path& path, const CampaignSummary& summary,
                        const std::string& config_echo_json, const std::vector<int>& best_tour);

CampaignSummary read_summary_json(const std::filesystem::path& path);

/// One "generation,best_distance" file per record that carries a trace,
/// named trace_<strategy>_<seed>.csv under `dir`.
void write_traces(const std::filesystem::path& dir, const std::vector<RunRecord>& records);

/// Writes runs.csv, summary.json and any recorded traces under `dir`
/// (created if needed). The summary embeds the config echo and the best
/// run's tour. Output bytes are a pure function of the records.
void write_reports(const std::filesystem::path& dir, const CampaignResult& result,
                   const std::string& config_echo_json);

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table);

void write_comparison_json(const std::filesystem::path& path, const ComparisonReport& report);

/// JSON echoes of the configurations, embedded in summary documents.
std::string config_to_json(const StrategyConfig& cfg, const RunConfig& run_cfg);
std::string config_to_json(const CaConfig& cfg);

} // namespace senga
