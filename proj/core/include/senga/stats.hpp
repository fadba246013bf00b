#pragma once

#include <span>

namespace senga {

double mean(std::span<const double> values);

/// Sample (n-1) standard deviation; 0 by convention for fewer than 2 values.
double sample_std(std::span<const double> values);

/// Welch's unequal-variance t-test from per-sample aggregates.
struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
    /// p for the one-sided alternative mean(a) < mean(b).
    double p_one_sided_a_less = 0.5;
    /// Set when both samples have zero variance, which makes t unbounded.
    bool degenerate = false;
};

WelchResult welch_t_test(double mean_a, double std_a, int n_a, double mean_b, double std_b, int n_b);

} // namespace senga
