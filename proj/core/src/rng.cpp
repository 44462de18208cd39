#include "ppring/rng.hpp"

namespace ppring
{
    namespace
    {
        __extension__ typedef unsigned __int128 u128;
    }

    std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) noexcept
    {
        return splitmix64(splitmix64(splitmix64(base) ^ a) ^ (b * 0x9e3779b97f4a7c15ULL + 1));
    }

    std::uint64_t Rng::below(std::uint64_t bound)
    {
        // Lemire, "Fast Random Integer Generation in an Interval" (2019).
        u128 m = static_cast<u128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound)
        {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold)
            {
                m = static_cast<u128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }
}
