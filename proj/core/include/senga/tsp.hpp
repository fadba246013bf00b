#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace senga {

struct City {
    int id;
    double x;
    double y;
};

/// Immutable symmetric Euclidean TSP instance.
///
/// The full n x n distance table is precomputed once so tour evaluation is a
/// table walk. Instances never change after construction and are safe to
/// share read-only across concurrent runs.
class TspInstance {
public:
    /// City ids must be unique and contiguous from 0 to n-1; n >= 1.
    TspInstance(std::string name, std::vector<City> cities);

    /// n cities drawn uniformly from [0, extent)^2; identical (seed, n,
    /// extent) yields a bit-identical instance. Throws InvalidInstanceError
    /// for n < 3.
    static TspInstance generate(std::uint64_t seed, int n, double extent);

    /// Reads the plain-text instance format written by save(). Throws
    /// ParseError naming the offending line.
    static TspInstance load(const std::filesystem::path& path);

    /// Writes a header (name, dimension, edge_weight_type) followed by one
    /// "id x y" line per city. Coordinates use shortest round-trip notation,
    /// so save followed by load reproduces the instance exactly.
    void save(const std::filesystem::path& path) const;

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<City>& cities() const { return cities_; }

    double distance(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Length of the closed tour (includes the edge back to the start).
    /// Throws InvalidTourError if `tour` is not a permutation of 0..n-1.
    double tour_length(std::span<const int> tour) const;

    /// tour_length without the permutation check; callers guarantee validity.
    double tour_length_unchecked(std::span<const int> tour) const;

    bool is_permutation(std::span<const int> tour) const;

    /// 64-bit FNV-1a hash of the coordinate list as a hex string; embedded in
    /// reports to prevent cross-instance comparisons.
    std::string fingerprint() const;

private:
    std::string name_;
    std::vector<City> cities_;
    std::vector<double> dist_;
    int n_ = 0;
};

} // namespace senga
