#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace senga {

struct TracePoint {
    long generation;
    double best_distance;
};

/// Everything a single run reports. Wall time is informational only and is
/// excluded from determinism guarantees.
struct RunRecord {
    std::string strategy;
    std::uint64_t seed = 0;
    double final_best_distance = 0.0;
    std::vector<int> best_tour;
    long last_improvement_generation = 0;
    long generations_executed = 0;
    long deaths_total = 0;
    std::optional<long> deaths_senescent;
    long deaths_aged = 0; ///< Replaced members that had survived at least one generation.
    double wall_time_seconds = 0.0;
    std::vector<TracePoint> trace; ///< Best-so-far per generation; filled only on request.
};

} // namespace senga
