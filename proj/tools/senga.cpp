// Command-line front end: instance generation, single runs, campaigns,
// parameter sweeps, the grid engine and campaign comparison.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "senga/senga.hpp"

namespace {

using namespace senga;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct InstanceOpts {
    std::string path;
    std::uint64_t gen_seed = 0;
    int gen_n = 100;
    double gen_extent = 1000.0;
    CLI::Option* path_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

void add_instance_options(CLI::App* cmd, InstanceOpts& o) {
    o.path_opt = cmd->add_option("--instance", o.path, "Instance file to load");
    o.seed_opt = cmd->add_option("--gen-seed", o.gen_seed, "Generate the instance from this seed instead of loading");
    cmd->add_option("--gen-n", o.gen_n, "Generated instance size")->capture_default_str();
    cmd->add_option("--gen-extent", o.gen_extent, "Generated coordinate extent")->capture_default_str();
    o.path_opt->excludes(o.seed_opt);
    o.seed_opt->excludes(o.path_opt);
}

TspInstance resolve_instance(const InstanceOpts& o) {
    if (o.path_opt->count() > 0)
        return TspInstance::load(o.path);
    if (o.seed_opt->count() > 0)
        return TspInstance::generate(o.gen_seed, o.gen_n, o.gen_extent);
    throw ConfigError("missing instance: pass --instance FILE or --gen-seed N");
}

struct StrategyOpts {
    std::string name;
    StrategyConfig cfg;
    CLI::Option* name_opt = nullptr;
};

void add_strategy_options(CLI::App* cmd, StrategyOpts& o, bool required) {
    o.name_opt = cmd->add_option("--strategy", o.name, "Strategy: age, fitness, hybrid, rapid, gradual or soma");
    if (required)
        o.name_opt->required();
    cmd->add_option("--pop", o.cfg.pop_size, "Population size")->capture_default_str();
    cmd->add_option("--breed-fraction", o.cfg.breed_fraction, "Breeding share of the ranked population")
        ->capture_default_str();
    cmd->add_option("--mutation-rate", o.cfg.mutation_rate, "Per-gene mutation probability")->capture_default_str();
    cmd->add_option("--max-age", o.cfg.max_age, "Rapid senescence: age limit before forced demotion")
        ->capture_default_str();
    cmd->add_option("--divisor", o.cfg.divisor_v, "Gradual senescence: divisor v in distance + age^3/v")
        ->capture_default_str();
    cmd->add_option("--soma-budget", o.cfg.soma_start_budget, "Soma senescence: starting life budget")
        ->capture_default_str();
}

StrategyConfig resolve_strategy(const StrategyOpts& o) {
    const auto variant = strategy_from_name(o.name);
    if (!variant)
        throw ConfigError("unknown strategy '" + o.name + "' for --strategy");
    StrategyConfig cfg = o.cfg;
    cfg.variant = *variant;
    cfg.validate();
    return cfg;
}

void print_run_line(const RunRecord& r) {
    std::cout << "run strategy=" << r.strategy << " seed=" << r.seed << " best=" << fixed6(r.final_best_distance)
              << " last_improvement=" << r.last_improvement_generation << " deaths_total=" << r.deaths_total
              << " deaths_senescent=";
    if (r.deaths_senescent)
        std::cout << *r.deaths_senescent;
    else
        std::cout << "n/a";
    std::cout << " wall_s=" << fixed6(r.wall_time_seconds) << "\n";
}

void print_summary(const CampaignSummary& s) {
    std::cout << "campaign strategy=" << s.strategy << " reps=" << s.repetitions << " generations=" << s.generations
              << "\n  mean=" << fixed6(s.mean_distance) << " std=" << fixed6(s.std_distance)
              << " min=" << fixed6(s.min_distance) << " max=" << fixed6(s.max_distance)
              << "\n  mean_last_improvement=" << fixed6(s.mean_last_improvement)
              << " mean_deaths_total=" << fixed6(s.mean_deaths_total);
    if (s.mean_senescent_fraction_of_total)
        std::cout << "\n  senescent_fraction_of_total=" << fixed6(*s.mean_senescent_fraction_of_total);
    if (s.mean_senescent_fraction_of_aged)
        std::cout << " senescent_fraction_of_aged=" << fixed6(*s.mean_senescent_fraction_of_aged);
    std::cout << "\n  instance=" << s.instance_fingerprint << " rng=" << s.rng_name << " base_seed=" << s.base_seed
              << "\n";
}

void print_comparison(const ComparisonReport& report) {
    std::cout << "order by mean distance (best first):";
    for (const std::string& name : report.order_by_mean)
        std::cout << ' ' << name;
    std::cout << "\n";
    for (const PairComparison& pc : report.pairs) {
        std::cout << pc.a << " vs " << pc.b << ": mean " << fixed6(pc.mean_a) << " vs " << fixed6(pc.mean_b)
                  << ", diff " << fixed6(pc.diff_percent) << "%"
                  << ", " << pc.b << " better by " << fixed6(pc.improvement_percent_of_b) << "% of " << pc.a;
        if (pc.degenerate)
            std::cout << ", t degenerate (zero variance)";
        else
            std::cout << ", t=" << fixed6(pc.t) << " df=" << fixed6(pc.df) << " p=" << fixed6(pc.p_two_sided);
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Senescence-enhanced genetic algorithms on the symmetric TSP"};
    app.require_subcommand(1);
    app.fallthrough(); // lets app-level flags like --config follow the subcommand
    app.set_config("--config", "", "Read options from a key=value file (explicit flags win)");
    app.set_version_flag("--version", kVersion);

    int exit_code = 0;

    // gen-instance ---------------------------------------------------------
    auto* gen = app.add_subcommand("gen-instance", "Generate a random instance file");
    gen->configurable();
    struct {
        std::uint64_t seed = 1;
        int n = 100;
        double extent = 1000.0;
        std::string name;
        std::string out;
    } gen_opts;
    gen->add_option("--seed", gen_opts.seed, "Generator seed")->capture_default_str();
    gen->add_option("--n", gen_opts.n, "Number of cities")->capture_default_str();
    gen->add_option("--extent", gen_opts.extent, "Coordinates are uniform in [0, extent)^2")->capture_default_str();
    gen->add_option("--name", gen_opts.name, "Instance name written to the header");
    gen->add_option("--out", gen_opts.out, "Output file")->required();
    gen->callback([&] {
        TspInstance inst = TspInstance::generate(gen_opts.seed, gen_opts.n, gen_opts.extent);
        if (!gen_opts.name.empty())
            inst = TspInstance(gen_opts.name, inst.cities());
        inst.save(gen_opts.out);
        std::cout << "wrote " << gen_opts.out << " (" << inst.size() << " cities, fingerprint " << inst.fingerprint()
                  << ")\n";
    });

    // run / campaign -------------------------------------------------------
    struct PanmicticOpts {
        InstanceOpts inst;
        StrategyOpts strat;
        RunConfig run_cfg;
        std::uint64_t seed = 1;
        int reps = 100;
        int jobs = 1;
        std::string out = "results";
    };

    auto add_panmictic_options = [](CLI::App* cmd, PanmicticOpts& o, bool with_reps) {
        add_instance_options(cmd, o.inst);
        add_strategy_options(cmd, o.strat, true);
        cmd->add_option("--generations", o.run_cfg.generations, "Fixed generation budget per run")
            ->capture_default_str();
        cmd->add_option("--seed", o.seed, with_reps ? "Base seed; run i uses seed + i" : "Run seed")
            ->capture_default_str();
        if (with_reps) {
            cmd->add_option("--reps", o.reps, "Number of repetitions")->capture_default_str();
            cmd->add_option("--jobs", o.jobs, "Worker threads for independent runs")->capture_default_str();
        }
        cmd->add_flag("--trace", o.run_cfg.record_trace, "Write a per-generation best-distance trace per run");
        cmd->add_option("--out", o.out, "Output directory")->envname("SENGA_OUT")->capture_default_str();
    };

    auto run_panmictic = [](const PanmicticOpts& o, int reps) {
        const TspInstance inst = resolve_instance(o.inst);
        const StrategyConfig cfg = resolve_strategy(o.strat);
        const CampaignResult result = run_campaign(inst, cfg, o.run_cfg, reps, o.seed, o.jobs);
        for (const RunRecord& r : result.records)
            print_run_line(r);
        print_summary(result.summary);
        write_reports(o.out, result, config_to_json(cfg, o.run_cfg));
        std::cout << "reports written to " << o.out << "\n";
    };

    auto* run_cmd = app.add_subcommand("run", "Execute one run of a strategy");
    run_cmd->configurable();
    auto run_opts = std::make_shared<PanmicticOpts>();
    add_panmictic_options(run_cmd, *run_opts, false);
    run_cmd->callback([&, run_opts] { run_panmictic(*run_opts, 1); });

    auto* campaign_cmd = app.add_subcommand("campaign", "Run repeated seeded runs and aggregate them");
    campaign_cmd->configurable();
    auto campaign_opts = std::make_shared<PanmicticOpts>();
    add_panmictic_options(campaign_cmd, *campaign_opts, true);
    campaign_cmd->callback([&, campaign_opts] { run_panmictic(*campaign_opts, campaign_opts->reps); });

    // sweep ------------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter and report mean distance per value");
    sweep_cmd->configurable();
    struct SweepOpts {
        InstanceOpts inst;
        StrategyOpts strat;
        RunConfig run_cfg;
        CaConfig ca_cfg;
        std::string param;
        double lo = 0, hi = 0, step = 1;
        int samples = 5;
        std::uint64_t seed = 1;
        int jobs = 1;
        std::string out = "results";
    };
    auto sweep_opts = std::make_shared<SweepOpts>();
    add_instance_options(sweep_cmd, sweep_opts->inst);
    add_strategy_options(sweep_cmd, sweep_opts->strat, false);
    sweep_cmd->add_option("--param", sweep_opts->param, "max_age, divisor_v, soma_start_budget or ca_max_age")
        ->required();
    sweep_cmd->add_option("--lo", sweep_opts->lo, "First parameter value")->required();
    sweep_cmd->add_option("--hi", sweep_opts->hi, "Last parameter value (inclusive)")->required();
    sweep_cmd->add_option("--step", sweep_opts->step, "Parameter increment")->capture_default_str();
    sweep_cmd->add_option("--samples", sweep_opts->samples, "Runs per parameter value")->capture_default_str();
    sweep_cmd->add_option("--generations", sweep_opts->run_cfg.generations, "Generation budget per run")
        ->capture_default_str();
    sweep_cmd->add_option("--ca-generations", sweep_opts->ca_cfg.generations, "Grid-engine budget (ca_max_age sweeps)")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_opts->seed, "Base seed; advances by one per run")->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_opts->jobs, "Worker threads")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_opts->out, "Output directory")->envname("SENGA_OUT")->capture_default_str();
    sweep_cmd->callback([&, sweep_opts] {
        SweepOpts& o = *sweep_opts;
        const TspInstance inst = resolve_instance(o.inst);
        const SweepParam param = sweep_param_from_name(o.param);
        StrategyConfig cfg = o.strat.cfg;
        if (o.strat.name_opt->count() > 0) {
            cfg = resolve_strategy(o.strat);
            const bool matches = (param == SweepParam::MaxAge && cfg.variant == Strategy::Rapid) ||
                                 (param == SweepParam::DivisorV && cfg.variant == Strategy::Gradual) ||
                                 (param == SweepParam::SomaStartBudget && cfg.variant == Strategy::Soma);
            if (!matches && param != SweepParam::CaMaxAge)
                throw ConfigError("--param " + o.param + " does not belong to --strategy " + o.strat.name);
            if (param == SweepParam::CaMaxAge)
                throw ConfigError("--param ca_max_age sweeps the grid engine; drop --strategy");
        }
        const SweepTable table = sweep(inst, cfg, o.ca_cfg, o.run_cfg, param, o.lo, o.hi, o.step, o.samples, o.seed,
                                       o.jobs);
        for (const SweepRow& row : table.rows)
            std::cout << "sweep " << table.parameter << "=" << fixed6(row.value) << " samples=" << row.samples
                      << " mean=" << fixed6(row.mean_distance) << " std=" << fixed6(row.std_distance) << "\n";
        std::cout << "argmin " << table.parameter << "=" << fixed6(table.argmin_value) << "\n";
        std::error_code ec;
        std::filesystem::create_directories(o.out, ec);
        if (ec)
            throw IoError("cannot create output directory '" + o.out + "': " + ec.message());
        write_sweep_csv(std::filesystem::path(o.out) / "sweep.csv", table);
        std::cout << "reports written to " << o.out << "\n";
    });

    // ca ---------------------------------------------------------------------
    auto* ca_cmd = app.add_subcommand("ca", "Run the toroidal grid engine");
    ca_cmd->configurable();
    struct CaOpts {
        InstanceOpts inst;
        CaConfig cfg;
        bool immortal = false;
        bool trace = false;
        bool snapshots = false;
        int reps = 100;
        std::uint64_t seed = 1;
        int jobs = 1;
        std::string out = "results";
    };
    auto ca_opts = std::make_shared<CaOpts>();
    add_instance_options(ca_cmd, ca_opts->inst);
    ca_cmd->add_option("--max-age", ca_opts->cfg.max_age, "Age limit; occupants above it die")->capture_default_str();
    ca_cmd->add_flag("--immortal", ca_opts->immortal, "Disable aging (max age set above the generation budget)");
    ca_cmd->add_option("--generations", ca_opts->cfg.generations, "Sweeps per run")->capture_default_str();
    ca_cmd->add_option("--grid-width", ca_opts->cfg.width, "Grid width")->capture_default_str();
    ca_cmd->add_option("--grid-height", ca_opts->cfg.height, "Grid height")->capture_default_str();
    ca_cmd->add_option("--mutation-rate", ca_opts->cfg.mutation_rate, "Per-gene mutation probability")
        ->capture_default_str();
    ca_cmd->add_option("--reps", ca_opts->reps, "Number of repetitions")->capture_default_str();
    ca_cmd->add_option("--seed", ca_opts->seed, "Base seed; run i uses seed + i")->capture_default_str();
    ca_cmd->add_option("--jobs", ca_opts->jobs, "Worker threads")->capture_default_str();
    ca_cmd->add_flag("--trace", ca_opts->trace, "Write a per-generation best-distance trace per run");
    ca_cmd->add_flag("--snapshots", ca_opts->snapshots, "Dump a per-generation grid snapshot per run");
    ca_cmd->add_option("--out", ca_opts->out, "Output directory")->envname("SENGA_OUT")->capture_default_str();
    ca_cmd->callback([&, ca_opts] {
        CaOpts& o = *ca_opts;
        const TspInstance inst = resolve_instance(o.inst);
        if (o.immortal)
            o.cfg.max_age = static_cast<int>(o.cfg.generations) + 1;
        o.cfg.validate();
        CampaignResult result;
        if (o.snapshots) {
            // Snapshot dumps stream per run, so execute sequentially.
            std::error_code ec;
            std::filesystem::create_directories(o.out, ec);
            if (ec)
                throw IoError("cannot create output directory '" + o.out + "': " + ec.message());
            for (int i = 0; i < o.reps; ++i) {
                const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
                std::ostringstream name;
                name << "ca_snapshots_" << seed << ".txt";
                std::ofstream snap(std::filesystem::path(o.out) / name.str());
                if (!snap)
                    throw IoError("cannot open snapshot file in '" + o.out + "'");
                result.records.push_back(run_ca(inst, o.cfg, seed, o.trace, &snap));
            }
            result.summary = summarize(result.records, inst.fingerprint(), o.seed, o.cfg.generations);
        } else {
            result = run_ca_campaign(inst, o.cfg, o.reps, o.seed, o.jobs, o.trace);
        }
        for (const RunRecord& r : result.records)
            print_run_line(r);
        print_summary(result.summary);
        write_reports(o.out, result, config_to_json(o.cfg));
        std::cout << "reports written to " << o.out << "\n";
    });

    // compare ------------------------------------------------------------------
    auto* compare_cmd = app.add_subcommand("compare", "Compare two or more campaign summary files");
    auto compare_files = std::make_shared<std::vector<std::string>>();
    auto compare_out = std::make_shared<std::string>();
    compare_cmd->add_option("summaries", *compare_files, "summary.json files")->required()->expected(2, -1);
    compare_cmd->add_option("--out", *compare_out, "Also write the comparison as JSON to this file");
    compare_cmd->callback([&, compare_files, compare_out] {
        std::vector<CampaignSummary> summaries;
        for (const std::string& f : *compare_files)
            summaries.push_back(read_summary_json(f));
        const ComparisonReport report = compare(summaries);
        print_comparison(report);
        if (!compare_out->empty())
            write_comparison_json(*compare_out, report);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
