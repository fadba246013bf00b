#include "senga/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

namespace senga {

double mean(std::span<const double> values) {
    if (values.empty())
        return 0.0;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2)
        return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values)
        ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

WelchResult welch_t_test(double mean_a, double std_a, int n_a, double mean_b, double std_b, int n_b) {
    WelchResult r;
    const double ga = std_a * std_a / n_a;
    const double gb = std_b * std_b / n_b;
    const double se2 = ga + gb;
    if (se2 <= 0.0 || n_a < 2 || n_b < 2) {
        // Both samples constant; the statistic is unbounded unless the means
        // coincide.
        r.degenerate = true;
        if (mean_a == mean_b) {
            r.t = 0.0;
            r.p_two_sided = 1.0;
            r.p_one_sided_a_less = 0.5;
        } else {
            r.t = mean_a < mean_b ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
            r.p_two_sided = 0.0;
            r.p_one_sided_a_less = mean_a < mean_b ? 0.0 : 1.0;
        }
        return r;
    }
    r.t = (mean_a - mean_b) / std::sqrt(se2);
    r.df = se2 * se2 / (ga * ga / (n_a - 1) + gb * gb / (n_b - 1));
    const boost::math::students_t dist(r.df);
    const double cdf_t = boost::math::cdf(dist, r.t);
    r.p_two_sided = 2.0 * std::min(cdf_t, 1.0 - cdf_t);
    r.p_one_sided_a_less = cdf_t;
    return r;
}

} // namespace senga
