#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "senga/errors.hpp"
#include "senga/experiment.hpp"
#include "senga/rng.hpp"
#include "senga/version.hpp"

namespace senga {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.push_back("");
    return fields;
}

} // namespace

void write_run_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
    std::ofstream out = open_out(path);
    out << "strategy,seed,final_best_distance,last_improvement_generation,generations,deaths_total,"
           "deaths_senescent,wall_time_s\n";
    for (const RunRecord& r : records) {
        out << r.strategy << ',' << r.seed << ',' << fixed6(r.final_best_distance) << ','
            << r.last_improvement_generation << ',' << r.generations_executed << ',' << r.deaths_total << ',';
        if (r.deaths_senescent)
            out << *r.deaths_senescent;
        out << ',' << fixed6(r.wall_time_seconds) << "\n";
    }
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

std::vector<RunRecord> read_run_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    const std::string path_str = path.string();
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        throw ParseError(path_str, 1, "missing CSV header");
    ++line_no;

    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 8)
            throw ParseError(path_str, line_no, "expected 8 fields, got " + std::to_string(fields.size()));
        RunRecord r;
        r.strategy = fields[0];
        try {
            r.seed = std::stoull(fields[1]);
            r.final_best_distance = std::stod(fields[2]);
            r.last_improvement_generation = std::stol(fields[3]);
            r.generations_executed = std::stol(fields[4]);
            r.deaths_total = std::stol(fields[5]);
            if (!fields[6].empty())
                r.deaths_senescent = std::stol(fields[6]);
            r.wall_time_seconds = std::stod(fields[7]);
        } catch (const std::exception&) {
            throw ParseError(path_str, line_no, "non-numeric field in '" + line + "'");
        }
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

ordered_json summary_to_json(const CampaignSummary& s) {
    ordered_json j;
    j["strategy"] = s.strategy;
    j["instance_fingerprint"] = s.instance_fingerprint;
    j["rng"] = s.rng_name;
    j["library_version"] = kVersion;
    j["base_seed"] = s.base_seed;
    j["repetitions"] = s.repetitions;
    j["generations"] = s.generations;
    j["mean_distance"] = s.mean_distance;
    j["std_distance"] = s.std_distance;
    j["std_is_degenerate"] = s.std_is_degenerate;
    j["min_distance"] = s.min_distance;
    j["max_distance"] = s.max_distance;
    j["mean_last_improvement"] = s.mean_last_improvement;
    j["mean_deaths_total"] = s.mean_deaths_total;
    if (s.mean_senescent_fraction_of_total)
        j["mean_senescent_fraction_of_total"] = *s.mean_senescent_fraction_of_total;
    if (s.mean_senescent_fraction_of_aged)
        j["mean_senescent_fraction_of_aged"] = *s.mean_senescent_fraction_of_aged;
    return j;
}

} // namespace

void write_summary_json(const std::filesystem::path& path, const CampaignSummary& summary,
                        const std::string& config_echo_json, const std::vector<int>& best_tour) {
    ordered_json j = summary_to_json(summary);
    if (!config_echo_json.empty())
        j["config"] = json::parse(config_echo_json);
    j["best_tour"] = best_tour;
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

CampaignSummary read_summary_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), static_cast<int>(e.byte), "not valid JSON: " + std::string(e.what()));
    }
    CampaignSummary s;
    try {
        s.strategy = j.at("strategy").get<std::string>();
        s.instance_fingerprint = j.at("instance_fingerprint").get<std::string>();
        s.rng_name = j.at("rng").get<std::string>();
        s.base_seed = j.at("base_seed").get<std::uint64_t>();
        s.repetitions = j.at("repetitions").get<int>();
        s.generations = j.at("generations").get<long>();
        s.mean_distance = j.at("mean_distance").get<double>();
        s.std_distance = j.at("std_distance").get<double>();
        s.std_is_degenerate = j.at("std_is_degenerate").get<bool>();
        s.min_distance = j.at("min_distance").get<double>();
        s.max_distance = j.at("max_distance").get<double>();
        s.mean_last_improvement = j.at("mean_last_improvement").get<double>();
        s.mean_deaths_total = j.at("mean_deaths_total").get<double>();
        if (j.contains("mean_senescent_fraction_of_total"))
            s.mean_senescent_fraction_of_total = j["mean_senescent_fraction_of_total"].get<double>();
        if (j.contains("mean_senescent_fraction_of_aged"))
            s.mean_senescent_fraction_of_aged = j["mean_senescent_fraction_of_aged"].get<double>();
    } catch (const json::exception& e) {
        throw ParseError(path.string(), 0, "summary field missing or mistyped: " + std::string(e.what()));
    }
    return s;
}

void write_traces(const std::filesystem::path& dir, const std::vector<RunRecord>& records) {
    for (const RunRecord& r : records) {
        if (r.trace.empty())
            continue;
        std::ostringstream name;
        name << "trace_" << r.strategy << "_" << r.seed << ".csv";
        std::ofstream out = open_out(dir / name.str());
        out << "generation,best_distance\n";
        for (const TracePoint& p : r.trace)
            out << p.generation << ',' << fixed6(p.best_distance) << "\n";
        if (!out)
            throw IoError("failed while writing '" + (dir / name.str()).string() + "'");
    }
}

void write_reports(const std::filesystem::path& dir, const CampaignResult& result,
                   const std::string& config_echo_json) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_run_csv(dir / "runs.csv", result.records);
    const RunRecord* best = &result.records.front();
    for (const RunRecord& r : result.records)
        if (r.final_best_distance < best->final_best_distance)
            best = &r;
    write_summary_json(dir / "summary.json", result.summary, config_echo_json, best->best_tour);
    write_traces(dir, result.records);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table) {
    std::ofstream out = open_out(path);
    out << "# instance " << table.instance_fingerprint << "\n";
    out << "parameter,value,samples,mean_distance,std_distance\n";
    for (const SweepRow& row : table.rows)
        out << table.parameter << ',' << fixed6(row.value) << ',' << row.samples << ',' << fixed6(row.mean_distance)
            << ',' << fixed6(row.std_distance) << "\n";
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

void write_comparison_json(const std::filesystem::path& path, const ComparisonReport& report) {
    ordered_json j;
    j["order_by_mean"] = report.order_by_mean;
    ordered_json pairs = ordered_json::array();
    for (const PairComparison& pc : report.pairs) {
        ordered_json p;
        p["a"] = pc.a;
        p["b"] = pc.b;
        p["mean_a"] = pc.mean_a;
        p["mean_b"] = pc.mean_b;
        p["diff_percent"] = pc.diff_percent;
        p["improvement_percent_of_b"] = pc.improvement_percent_of_b;
        p["t"] = pc.degenerate ? json() : json(pc.t);
        p["df"] = pc.df;
        p["p_two_sided"] = pc.p_two_sided;
        p["degenerate"] = pc.degenerate;
        pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

std::string config_to_json(const StrategyConfig& cfg, const RunConfig& run_cfg) {
    ordered_json j;
    j["strategy"] = std::string(strategy_name(cfg.variant));
    j["pop_size"] = cfg.pop_size;
    j["breed_fraction"] = cfg.breed_fraction;
    j["mutation_rate"] = cfg.mutation_rate;
    j["generations"] = run_cfg.generations;
    switch (cfg.variant) {
    case Strategy::Rapid:
        j["max_age"] = cfg.max_age;
        break;
    case Strategy::Gradual:
        j["divisor_v"] = cfg.divisor_v;
        break;
    case Strategy::Soma:
        j["soma_start_budget"] = cfg.soma_start_budget;
        j["soma_stage_weights"] = cfg.soma_stage_weights;
        j["soma_stage_deltas"] = cfg.soma_stage_deltas;
        break;
    default:
        break;
    }
    return j.dump();
}

std::string config_to_json(const CaConfig& cfg) {
    ordered_json j;
    j["strategy"] = cfg.immortal() ? "ca-immortal" : "ca-mortal";
    j["width"] = cfg.width;
    j["height"] = cfg.height;
    j["max_age"] = cfg.max_age;
    j["generations"] = cfg.generations;
    j["mutation_rate"] = cfg.mutation_rate;
    return j.dump();
}

} // namespace senga
