#include "senga/torus_ca.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "senga/errors.hpp"

namespace senga {

void CaConfig::validate() const {
    if (width < 3 || height < 3)
        throw ConfigError("grid must be at least 3x3 so every cell has 8 distinct neighbors");
    if (generations < 1)
        throw ConfigError("generations must be at least 1");
    if (max_age < 0)
        throw ConfigError("max_age must be non-negative");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw ConfigError("mutation_rate must be in [0, 1]");
}

Grid::Grid(int width, int height) : width_(width), height_(height) {
    cells_.resize(static_cast<std::size_t>(width) * height);
}

int Grid::occupied_count() const {
    int count = 0;
    for (const auto& c : cells_)
        if (c.has_value())
            ++count;
    return count;
}

std::array<std::pair<int, int>, 8> Grid::neighbors(int row, int col) const {
    std::array<std::pair<int, int>, 8> out;
    std::size_t k = 0;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0)
                continue;
            out[k++] = {(row + dr + height_) % height_, (col + dc + width_) % width_};
        }
    }
    return out;
}

GenerationOutcome ca_generation(const TspInstance& inst, Grid& grid, const CaConfig& cfg, Rng& rng,
                                double best_so_far) {
    int replaced = 0;
    int aged_victims = 0;
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            auto& actor = grid.cell(r, c);
            if (!actor)
                continue;
            const auto picks = grid.neighbors(r, c);
            const auto [nr, nc] = picks[rng.index(8)];
            auto& other = grid.cell(nr, nc);
            if (!other) {
                other = forced_single_mutation(inst, *actor, rng);
                continue;
            }
            Chromosome child = mutate(inst, two_point_crossover(inst, *actor, *other, rng), cfg.mutation_rate, rng);
            auto& loser = actor->distance > other->distance ? actor : other;
            if (child.distance < loser->distance) {
                if (loser->age >= 1)
                    ++aged_victims;
                loser = std::move(child);
                ++replaced;
            }
        }
    }

    // Aging and death happen once, after the full sweep, so nothing born
    // during the sweep can die in it.
    int senescent = 0;
    double best = kNoBestYet;
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            auto& occupant = grid.cell(r, c);
            if (!occupant)
                continue;
            occupant->age += 1;
            if (occupant->age > cfg.max_age) {
                ++senescent;
                ++aged_victims;
                occupant.reset();
                continue;
            }
            if (occupant->distance < best)
                best = occupant->distance;
        }
    }

    GenerationOutcome out;
    out.deaths_total = replaced + senescent;
    out.deaths_senescent = senescent;
    out.deaths_aged = aged_victims;
    out.best_distance = best;
    out.improved = best < best_so_far;
    return out;
}

namespace {

void dump_snapshot(std::ostream& out, const Grid& grid, long generation) {
    out << "# generation " << generation << "\n";
    char buf[64];
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            if (c > 0)
                out << ' ';
            const auto& occupant = grid.cell(r, c);
            if (occupant) {
                std::snprintf(buf, sizeof buf, "%.2f/%d", occupant->distance, occupant->age);
                out << buf;
            } else {
                out << '-';
            }
        }
        out << "\n";
    }
    out << "\n";
}

} // namespace

RunRecord run_ca(const TspInstance& inst, const CaConfig& cfg, std::uint64_t seed, bool record_trace,
                 std::ostream* snapshots) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    Rng rng(seed);
    Grid grid(cfg.width, cfg.height);
    for (int r = 0; r < cfg.height; ++r)
        for (int c = 0; c < cfg.width; ++c)
            grid.cell(r, c) = random_chromosome(inst, rng);

    RunRecord rec;
    rec.strategy = cfg.immortal() ? "ca-immortal" : "ca-mortal";
    rec.seed = seed;
    rec.generations_executed = cfg.generations;
    rec.deaths_senescent = 0;

    double best = kNoBestYet;
    std::vector<int> best_tour;
    for (int r = 0; r < cfg.height; ++r) {
        for (int c = 0; c < cfg.width; ++c) {
            const auto& occupant = grid.cell(r, c);
            if (occupant->distance < best) {
                best = occupant->distance;
                best_tour = occupant->tour;
            }
        }
    }
    rec.last_improvement_generation = 0;
    if (record_trace)
        rec.trace.push_back({0, best});
    if (snapshots)
        dump_snapshot(*snapshots, grid, 0);

    for (long g = 1; g <= cfg.generations; ++g) {
        const GenerationOutcome out = ca_generation(inst, grid, cfg, rng, best);
        rec.deaths_total += out.deaths_total;
        *rec.deaths_senescent += out.deaths_senescent.value();
        rec.deaths_aged += out.deaths_aged;
        if (out.improved) {
            best = out.best_distance;
            rec.last_improvement_generation = g;
            [&] { // copy the first occupant holding the new best
                for (int r = 0; r < cfg.height; ++r) {
                    for (int c = 0; c < cfg.width; ++c) {
                        const auto& occupant = grid.cell(r, c);
                        if (occupant && occupant->distance == best) {
                            best_tour = occupant->tour;
                            return;
                        }
                    }
                }
            }();
        }
        if (record_trace)
            rec.trace.push_back({g, best});
        if (snapshots)
            dump_snapshot(*snapshots, grid, g);
    }

    rec.final_best_distance = best;
    rec.best_tour = std::move(best_tour);
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

} // namespace senga
