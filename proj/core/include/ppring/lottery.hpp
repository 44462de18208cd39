#pragma once

#include <cstdint>

namespace ppring
{
    /// Result of playing the lottery game: a round ends at a tail (lost) or at the
    /// k-th consecutive head (won). A round cut off by the flip budget is not counted.
    struct LotteryOutcome
    {
        std::uint64_t flips = 0;
        std::uint64_t rounds_played = 0;
        std::uint64_t rounds_won = 0;

        bool operator==(const LotteryOutcome &) const = default;
    };

    /// W_LG(k, flips): wins within the first `flips` fair coin flips.
    LotteryOutcome play_lottery(int k, std::uint64_t flips, std::uint64_t seed);

    /// Plays until exactly `rounds` rounds have finished; flips records how many it took.
    LotteryOutcome play_rounds(int k, std::uint64_t rounds, std::uint64_t seed);

    enum class LotteryBound : std::uint8_t
    {
        Upper, // W_LG(k, 4ck 2^k) <= 8ck
        Lower, // W_LG(k, 64ck 2^k) >= 16ck, k >= 2
    };

    struct BoundEstimate
    {
        std::uint64_t trials = 0;
        std::uint64_t failures = 0;
        std::uint64_t flips_per_trial = 0;
        std::uint64_t threshold = 0;
        double failure_rate = 0.0;
        double reference_bound = 0.0; // 2^{-ck}
    };

    /// Fraction of independent trials in which the bound's event fails.
    BoundEstimate estimate_bound(int k, int c, LotteryBound which, std::uint64_t trials, std::uint64_t seed);
}
