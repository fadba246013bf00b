#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "senga/chromosome.hpp"
#include "senga/run_record.hpp"
#include "senga/strategy.hpp"

namespace senga {

struct CaConfig {
    int width = 10;
    int height = 10;
    int max_age = 45; ///< Immortal control mode: any value above `generations`.
    long generations = 4500;
    double mutation_rate = 1.0 / 10000.0;

    bool immortal() const { return static_cast<long>(max_age) > generations; }
    void validate() const;
};

/// Toroidal grid of cells, each empty or holding one chromosome. Cells only
/// become empty through age death; the grid starts fully occupied.
class Grid {
public:
    Grid(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int cell_count() const { return width_ * height_; }

    std::optional<Chromosome>& cell(int row, int col) { return cells_[index(row, col)]; }
    const std::optional<Chromosome>& cell(int row, int col) const { return cells_[index(row, col)]; }

    int occupied_count() const;

    /// The 8 Moore neighbors of (row, col) with toroidal wrapping, in
    /// row-major offset order.
    std::array<std::pair<int, int>, 8> neighbors(int row, int col) const;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<std::optional<Chromosome>> cells_;
};

/// One sweep: every occupied cell, in row-major order, mates with a uniformly
/// chosen Moore neighbor. An empty neighbor is refilled with an asexual copy
/// of the actor carrying one guaranteed gene swap; an occupied neighbor
/// co-produces one crossover offspring that takes the less fit parent's cell
/// if strictly fitter than it. Updates are in place and visible to later
/// cells in the same sweep. Afterwards every occupant ages by one generation
/// and occupants older than max_age die, leaving their cells empty.
GenerationOutcome ca_generation(const TspInstance& inst, Grid& grid, const CaConfig& cfg, Rng& rng,
                                double best_so_far = kNoBestYet);

/// Full run: a freshly randomised, fully occupied grid swept cfg.generations
/// times. Deterministic in (instance, config, seed). When `snapshots` is
/// given, a text matrix of distances and ages is appended per generation.
RunRecord run_ca(const TspInstance& inst, const CaConfig& cfg, std::uint64_t seed, bool record_trace = false,
                 std::ostream* snapshots = nullptr);

} // namespace senga
