#pragma once

#include "ppring/rng.hpp"

#include <cstdint>

namespace ppring
{
    /// Uniformly random scheduler on a directed ring: each step yields i in [0, n),
    /// meaning interaction e_i = (u_i, u_{i+1 mod n}).
    class Scheduler
    {
    public:
        Scheduler(std::uint64_t seed, int n) : rng_(seed), seed_(seed), n_(n) {}

        int next() { return static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_))); }

        [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
        [[nodiscard]] int n() const noexcept { return n_; }

    private:
        Rng rng_;
        std::uint64_t seed_;
        int n_;
    };
}
