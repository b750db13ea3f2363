#pragma once

#include <cmath>
#include <cstdint>

namespace sparsecond {

/// Identifies one trial's random stream. A stream is a pure function of the
/// pair, so trials may execute in any order, on any number of threads, and
/// still reproduce bit for bit.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

/// Counter-based generator: word k of a stream is mix64(key + k*phi), i.e.
/// SplitMix64 seeded with a per-trial key derived from (master_seed,
/// trial_index). Uniform doubles take the top 53 bits of a word; standard
/// normal draws use the Marsaglia polar method over those uniforms. The
/// polar rejection consumes a variable number of words, but consumption
/// order within a stream is fixed, so output is reproducible.
///
/// The transform is frozen: changing it would silently change every seeded
/// result, so treat any modification here as a format break.
class CounterRng {
public:
    explicit CounterRng(SeedSpec s) noexcept
        : key_(mix64(mix64(s.master_seed + kPhi) + s.trial_index)) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + ++counter_ * kPhi); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw (polar method, second variate cached).
    double next_normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0, v = 0.0, s = 0.0;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ull;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sparsecond
