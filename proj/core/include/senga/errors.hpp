#pragma once

#include <stdexcept>
#include <string>

namespace senga {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A city set violating the instance invariants (too few cities, bad ids).
struct InvalidInstanceError : Error {
    using Error::Error;
};

/// A tour that is not a permutation of the instance's city ids.
struct InvalidTourError : Error {
    using Error::Error;
};

/// Parents over incompatible instances handed to a crossover.
struct InvalidMatingError : Error {
    using Error::Error;
};

/// An odd-sized list handed to adjacent-rank pairing.
struct PairingError : Error {
    using Error::Error;
};

/// An out-of-range or inconsistent configuration value.
struct ConfigError : Error {
    using Error::Error;
};

/// A malformed input file; the message carries "<path>:<line>:" context.
struct ParseError : Error {
    ParseError(const std::string& path, int line, const std::string& detail)
        : Error(path + ":" + std::to_string(line) + ": " + detail), line_number(line) {}

    int line_number;
};

/// Campaign summaries that cannot be compared (different instances).
struct ComparisonError : Error {
    using Error::Error;
};

/// A filesystem failure; the message names the offending path.
struct IoError : Error {
    using Error::Error;
};

} // namespace senga
