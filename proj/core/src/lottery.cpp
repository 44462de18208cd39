#include "ppring/lottery.hpp"

#include "ppring/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ppring
{
    namespace
    {
        void require_k(int k)
        {
            if (k < 1 || k > 40)
                throw std::invalid_argument("lottery k must lie in [1, 40], got " + std::to_string(k));
        }

        template <typename Done>
        LotteryOutcome play(int k, std::uint64_t seed, Done done)
        {
            Rng rng(seed);
            LotteryOutcome out;
            int heads = 0;
            while (!done(out))
            {
                ++out.flips;
                if (rng.coin())
                {
                    if (++heads == k)
                    {
                        ++out.rounds_played;
                        ++out.rounds_won;
                        heads = 0;
                    }
                }
                else
                {
                    ++out.rounds_played;
                    heads = 0;
                }
            }
            return out;
        }
    }

    LotteryOutcome play_lottery(int k, std::uint64_t flips, std::uint64_t seed)
    {
        require_k(k);
        return play(k, seed, [flips](const LotteryOutcome &o) { return o.flips >= flips; });
    }

    LotteryOutcome play_rounds(int k, std::uint64_t rounds, std::uint64_t seed)
    {
        require_k(k);
        return play(k, seed, [rounds](const LotteryOutcome &o) { return o.rounds_played >= rounds; });
    }

    BoundEstimate estimate_bound(int k, int c, LotteryBound which, std::uint64_t trials, std::uint64_t seed)
    {
        require_k(k);
        if (c < 1)
            throw std::invalid_argument("lottery c must be at least 1");
        if (trials < 1)
            throw std::invalid_argument("lottery needs at least one trial");
        if (which == LotteryBound::Lower && k < 2)
            throw std::invalid_argument("the lower bound requires k >= 2");

        const auto ck = static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(k);
        BoundEstimate est;
        est.trials = trials;
        est.flips_per_trial = (which == LotteryBound::Upper ? 4 : 64) * ck * (std::uint64_t{1} << k);
        est.threshold = (which == LotteryBound::Upper ? 8 : 16) * ck;
        est.reference_bound = std::ldexp(1.0, -static_cast<int>(ck));

        for (std::uint64_t t = 0; t < trials; ++t)
        {
            const auto wins = play_lottery(k, est.flips_per_trial, derive_seed(seed, t)).rounds_won;
            const bool failed = which == LotteryBound::Upper ? wins > est.threshold : wins < est.threshold;
            est.failures += failed ? 1 : 0;
        }
        est.failure_rate = static_cast<double>(est.failures) / static_cast<double>(trials);
        return est;
    }
}
