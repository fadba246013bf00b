#include "senga/tsp.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "senga/errors.hpp"
#include "senga/rng.hpp"

namespace senga {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

} // namespace

TspInstance::TspInstance(std::string name, std::vector<City> cities)
    : name_(std::move(name)), cities_(std::move(cities)), n_(static_cast<int>(cities_.size())) {
    if (n_ < 1)
        throw InvalidInstanceError("instance '" + name_ + "' has no cities");
    std::vector<char> seen(n_, 0);
    for (const City& c : cities_) {
        if (c.id < 0 || c.id >= n_ || seen[c.id])
            throw InvalidInstanceError("instance '" + name_ + "': city ids must be unique and contiguous from 0 to " +
                                       std::to_string(n_ - 1));
        seen[c.id] = 1;
    }
    // Keep city order by id so lookups are positional.
    std::sort(cities_.begin(), cities_.end(), [](const City& a, const City& b) { return a.id < b.id; });
    dist_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            const double dx = cities_[i].x - cities_[j].x;
            const double dy = cities_[i].y - cities_[j].y;
            const double d = std::sqrt(dx * dx + dy * dy);
            dist_[static_cast<std::size_t>(i) * n_ + j] = d;
            dist_[static_cast<std::size_t>(j) * n_ + i] = d;
        }
    }
}

TspInstance TspInstance::generate(std::uint64_t seed, int n, double extent) {
    if (n < 3)
        throw InvalidInstanceError("generated instances need at least 3 cities, got " + std::to_string(n));
    if (extent <= 0.0)
        throw InvalidInstanceError("coordinate extent must be positive");
    Rng rng(seed);
    std::vector<City> cities;
    cities.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = rng.real_in(0.0, extent);
        const double y = rng.real_in(0.0, extent);
        cities.push_back({i, x, y});
    }
    std::ostringstream name;
    name << "uniform-s" << seed << "-n" << n;
    return TspInstance(name.str(), std::move(cities));
}

double TspInstance::tour_length(std::span<const int> tour) const {
    if (!is_permutation(tour))
        throw InvalidTourError("tour is not a permutation of 0.." + std::to_string(n_ - 1));
    return tour_length_unchecked(tour);
}

double TspInstance::tour_length_unchecked(std::span<const int> tour) const {
    const std::size_t n = tour.size();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        total += dist_[static_cast<std::size_t>(tour[i]) * n_ + tour[i + 1]];
    total += dist_[static_cast<std::size_t>(tour[n - 1]) * n_ + tour[0]];
    return total;
}

bool TspInstance::is_permutation(std::span<const int> tour) const {
    if (tour.size() != static_cast<std::size_t>(n_))
        return false;
    std::vector<char> seen(n_, 0);
    for (int c : tour) {
        if (c < 0 || c >= n_ || seen[c])
            return false;
        seen[c] = 1;
    }
    return true;
}

std::string TspInstance::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(n_));
    for (const City& c : cities_) {
        mix(std::bit_cast<std::uint64_t>(c.x));
        mix(std::bit_cast<std::uint64_t>(c.y));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void TspInstance::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << "name: " << name_ << "\n";
    out << "dimension: " << n_ << "\n";
    out << "edge_weight_type: EUC2D\n";
    for (const City& c : cities_)
        out << c.id << ' ' << format_double(c.x) << ' ' << format_double(c.y) << "\n";
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

TspInstance TspInstance::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");

    const std::string path_str = path.string();
    std::string name;
    int dimension = -1;
    bool weight_type_seen = false;
    std::vector<City> cities;

    std::string line;
    int line_no = 0;
    bool in_coords = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty())
            continue;
        if (!in_coords) {
            const auto colon = text.find(':');
            if (colon != std::string::npos && !std::isdigit(static_cast<unsigned char>(text[0])) && text[0] != '-') {
                const std::string key = trim(text.substr(0, colon));
                const std::string value = trim(text.substr(colon + 1));
                if (key == "name") {
                    name = value;
                } else if (key == "dimension") {
                    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dimension);
                    if (ec != std::errc{} || ptr != value.data() + value.size() || dimension < 1)
                        throw ParseError(path_str, line_no, "invalid dimension '" + value + "'");
                } else if (key == "edge_weight_type") {
                    if (value != "EUC2D")
                        throw ParseError(path_str, line_no, "unsupported edge_weight_type '" + value + "'");
                    weight_type_seen = true;
                } else {
                    throw ParseError(path_str, line_no, "unknown header key '" + key + "'");
                }
                continue;
            }
            if (dimension < 0)
                throw ParseError(path_str, line_no, "coordinate line before a 'dimension' header");
            if (!weight_type_seen)
                throw ParseError(path_str, line_no, "coordinate line before an 'edge_weight_type' header");
            in_coords = true;
        }
        std::istringstream fields(text);
        int id;
        std::string xs, ys, extra;
        if (!(fields >> id >> xs >> ys) || (fields >> extra))
            throw ParseError(path_str, line_no, "expected 'id x y', got '" + text + "'");
        double x, y;
        auto parse_coord = [&](const std::string& s, double& outv) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), outv);
            return ec == std::errc{} && ptr == s.data() + s.size();
        };
        if (!parse_coord(xs, x) || !parse_coord(ys, y))
            throw ParseError(path_str, line_no, "non-numeric coordinate in '" + text + "'");
        if (id < 0 || id >= dimension)
            throw ParseError(path_str, line_no, "city id " + std::to_string(id) + " outside 0.." +
                                                    std::to_string(dimension - 1));
        for (const City& c : cities)
            if (c.id == id)
                throw ParseError(path_str, line_no, "duplicate city id " + std::to_string(id));
        cities.push_back({id, x, y});
    }
    if (dimension < 0)
        throw ParseError(path_str, line_no, "missing 'dimension' header");
    if (static_cast<int>(cities.size()) != dimension)
        throw ParseError(path_str, line_no,
                         "expected " + std::to_string(dimension) + " cities, got " + std::to_string(cities.size()));
    return TspInstance(name, std::move(cities));
}

} // namespace senga
