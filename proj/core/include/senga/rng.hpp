#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace senga {

/// Name of the random stream recorded in every report, so results can be
/// replayed and audited.
inline constexpr const char* kRngName = "mt19937_64";

/// Deterministic random source shared by all stochastic components.
///
/// The raw stream is std::mt19937_64, which the standard pins bit-for-bit.
/// Derived draws (bounded integers, unit reals) are implemented here with
/// fixed algorithms instead of std distributions, whose output is
/// implementation-defined; identical seeds therefore replay identical
/// streams on every platform. Copying an Rng clones its state, which tests
/// use to replay a stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Unbiased integer in [0, bound) by rejection sampling. bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold)
                return r % bound;
        }
    }

    /// Uniform index in [0, bound).
    int index(int bound) { return static_cast<int>(next_below(static_cast<std::uint64_t>(bound))); }

    /// Real in [0, 1) built from 53 random mantissa bits.
    double unit_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Real in [lo, hi).
    double real_in(double lo, double hi) { return lo + (hi - lo) * unit_real(); }

    /// True with probability p.
    bool chance(double p) { return unit_real() < p; }

    /// Two distinct values in [0, bound), returned sorted ascending. bound >= 2.
    std::pair<int, int> distinct_sorted_pair(int bound) {
        assert(bound >= 2);
        int a = index(bound);
        int b = index(bound - 1);
        if (b >= a)
            ++b;
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }

private:
    std::mt19937_64 gen_;
};

/// Fisher-Yates shuffle driven by the pinned bounded-integer draw.
template <typename T>
void shuffle_in_place(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[rng.next_below(i)]);
}

} // namespace senga
