#pragma once

#include <cstdint>
#include <random>

namespace ppring
{
    /// splitmix64 finalizer; used to derive independent seeds.
    std::uint64_t splitmix64(std::uint64_t x) noexcept;

    /// Deterministic seed for (base, a, b), e.g. (base_seed, n, trial_index).
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept;

    /// Pseudorandom source shared by every simulation in the library.
    ///
    /// Engine: std::mt19937_64, whose output stream is fixed by the C++ standard.
    /// Bounded draws use Lemire's multiply-shift with rejection rather than
    /// std::uniform_int_distribution so streams are identical across standard libraries.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        std::uint64_t next() { return engine_(); }

        /// Uniform in [0, bound). bound must be positive.
        std::uint64_t below(std::uint64_t bound);

        /// Uniform in [lo, hi].
        std::int64_t between(std::int64_t lo, std::int64_t hi)
        {
            return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
        }

        bool coin() { return (engine_() >> 63) != 0; }

    private:
        std::mt19937_64 engine_;
    };
}
