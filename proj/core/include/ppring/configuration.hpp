#pragma once

#include "ppring/params.hpp"
#include "ppring/rng.hpp"
#include "ppring/state.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppring
{
    /// A directed ring u_0 .. u_{n-1}; u_i interacts as initiator with u_{i+1 mod n}.
    struct Configuration
    {
        ProtocolParams params;
        std::vector<AgentState> agents;

        [[nodiscard]] int size() const noexcept { return static_cast<int>(agents.size()); }

        /// Index arithmetic modulo n; accepts any integer.
        [[nodiscard]] int wrap(long long i) const noexcept
        {
            const long long n = size();
            return static_cast<int>(((i % n) + n) % n);
        }

        [[nodiscard]] AgentState &at(long long i) noexcept { return agents[static_cast<std::size_t>(wrap(i))]; }
        [[nodiscard]] const AgentState &at(long long i) const noexcept
        {
            return agents[static_cast<std::size_t>(wrap(i))];
        }

        bool operator==(const Configuration &) const = default;
    };

    /// Every field of every agent drawn independently and uniformly from its declared range.
    Configuration random_configuration(const ProtocolParams &params, std::uint64_t seed);

    /// Draws one agent uniformly from the full state space.
    AgentState random_agent(const ProtocolParams &params, Rng &rng);

    /// Configuration with n default agents (all followers, Construct, zero counters).
    Configuration blank_configuration(const ProtocolParams &params);

    [[nodiscard]] bool in_range(const Configuration &config) noexcept;
}
