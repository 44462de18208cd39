#include "ppring/configuration.hpp"

#include "ppring/rng.hpp"

namespace ppring
{
    bool in_range(const Token &t, const ProtocolParams &p) noexcept
    {
        return (t.offset >= 1 && t.offset <= p.psi) || (t.offset <= -1 && t.offset >= 1 - p.psi);
    }

    bool in_range(const AgentState &a, const ProtocolParams &p) noexcept
    {
        if (a.dist < 0 || a.dist >= p.two_psi())
            return false;
        if (a.token_b && !in_range(*a.token_b, p))
            return false;
        if (a.token_w && !in_range(*a.token_w, p))
            return false;
        if (a.mode != Mode::Detect && a.mode != Mode::Construct)
            return false;
        if (a.clock < 0 || a.clock > p.kappa_max)
            return false;
        if (a.hits < 0 || a.hits > p.psi)
            return false;
        if (a.signal_r < 0 || a.signal_r > p.kappa_max)
            return false;
        const auto bullet = static_cast<int>(a.bullet);
        return bullet >= 0 && bullet <= 2;
    }

    bool in_range(const Configuration &config) noexcept
    {
        if (config.size() != config.params.n)
            return false;
        for (const auto &a : config.agents)
        {
            if (!in_range(a, config.params))
                return false;
        }
        return true;
    }

    namespace
    {
        std::optional<Token> random_token(const ProtocolParams &p, Rng &rng)
        {
            // {bottom} plus (2 psi - 1) offsets x 2 x 2 payloads, uniformly.
            const auto offsets = static_cast<std::uint64_t>(2 * p.psi - 1);
            const std::uint64_t pick = rng.below(1 + offsets * 4);
            if (pick == 0)
                return std::nullopt;
            const std::uint64_t k = pick - 1;
            const auto o = static_cast<int>(k / 4);
            Token t;
            t.offset = o < p.psi ? o + 1 : -(o - p.psi + 1);
            t.value_bit = (k & 1U) != 0;
            t.carry_bit = (k & 2U) != 0;
            return t;
        }
    }

    AgentState random_agent(const ProtocolParams &p, Rng &rng)
    {
        AgentState a;
        a.leader = rng.coin();
        a.b = rng.coin();
        a.dist = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.two_psi())));
        a.last = rng.coin();
        a.token_b = random_token(p, rng);
        a.token_w = random_token(p, rng);
        a.mode = rng.coin() ? Mode::Detect : Mode::Construct;
        a.clock = static_cast<int>(rng.between(0, p.kappa_max));
        a.hits = static_cast<int>(rng.between(0, p.psi));
        a.signal_r = static_cast<int>(rng.between(0, p.kappa_max));
        a.bullet = static_cast<Bullet>(rng.below(3));
        a.shield = rng.coin();
        a.signal_b = rng.coin();
        return a;
    }

    Configuration random_configuration(const ProtocolParams &params, std::uint64_t seed)
    {
        validate(params);
        Rng rng(seed);
        Configuration config{params, {}};
        config.agents.reserve(static_cast<std::size_t>(params.n));
        for (int i = 0; i < params.n; ++i)
        {
            config.agents.push_back(random_agent(params, rng));
        }
        return config;
    }

    Configuration blank_configuration(const ProtocolParams &params)
    {
        validate(params);
        return Configuration{params, std::vector<AgentState>(static_cast<std::size_t>(params.n))};
    }
}
