#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "senga/stats.hpp"

using namespace senga;

TEST_CASE("mean and sample deviation on hand values") {
    const std::vector<double> pair{800.0, 820.0};
    CHECK(mean(pair) == doctest::Approx(810.0).epsilon(1e-12));
    CHECK(sample_std(pair) == doctest::Approx(14.142135623730951).epsilon(1e-9));
    const std::vector<double> single{42.0};
    CHECK(mean(single) == 42.0);
    CHECK(sample_std(single) == 0.0);
}

// Reference values precomputed with scipy.stats.ttest_ind(equal_var=False) on
// two fixed normal samples (n=12 vs n=15).
TEST_CASE("welch test matches an external reference") {
    const WelchResult r = welch_t_test(819.266, 10.1155967064367, 12, 835.3738666666666, 14.679847706813508, 15);
    CHECK_FALSE(r.degenerate);
    CHECK(r.t == doctest::Approx(-3.3665156155581837).epsilon(1e-9));
    CHECK(r.df == doctest::Approx(24.54566599213804).epsilon(1e-9));
    CHECK(r.p_two_sided == doctest::Approx(0.002506062599703719).epsilon(1e-6));
    CHECK(r.p_one_sided_a_less == doctest::Approx(0.0012530312998518594).epsilon(1e-6));

    const WelchResult r2 = welch_t_test(831.8838, 9.108148728966038, 30, 826.1388333333337, 8.442881809378035, 30);
    CHECK(r2.t == doctest::Approx(2.533662421884992).epsilon(1e-9));
    CHECK(r2.p_two_sided == doctest::Approx(0.014028437943704019).epsilon(1e-6));
}

TEST_CASE("a summary compared with itself gives t 0 and p 1") {
    const WelchResult r = welch_t_test(810.0, 5.0, 30, 810.0, 5.0, 30);
    CHECK_FALSE(r.degenerate);
    CHECK(r.t == 0.0);
    CHECK(r.p_two_sided == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.p_one_sided_a_less == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero-variance samples are flagged degenerate") {
    const WelchResult differing = welch_t_test(800.0, 0.0, 30, 900.0, 0.0, 30);
    CHECK(differing.degenerate);
    CHECK(std::isinf(differing.t));
    CHECK(differing.t < 0.0);
    CHECK(differing.p_two_sided == 0.0);

    const WelchResult equal = welch_t_test(800.0, 0.0, 30, 800.0, 0.0, 30);
    CHECK(equal.degenerate);
    CHECK(equal.p_two_sided == 1.0);

    const WelchResult tiny = welch_t_test(800.0, 1.0, 1, 900.0, 1.0, 5);
    CHECK(tiny.degenerate);
}
