#pragma once

#include "ppring/params.hpp"

#include <cstdint>
#include <optional>

namespace ppring
{
    enum class Mode : std::uint8_t
    {
        Detect,
        Construct,
    };

    enum class Bullet : std::uint8_t
    {
        None = 0,
        Dummy = 1,
        Live = 2,
    };

    /// Black tokens run from dist-0 borders, white tokens from dist-psi borders.
    enum class TokenColor : std::uint8_t
    {
        Black,
        White,
    };

    /// Offset of the border agent a token of this color is generated at.
    [[nodiscard]] inline int token_base(TokenColor color, const ProtocolParams &p) noexcept
    {
        return color == TokenColor::Black ? 0 : p.psi;
    }

    /// A travelling segment-ID digit.
    ///
    /// offset is the signed distance to the token's current target, in
    /// [-psi+1, -1] (moving left) or [1, psi] (moving right).
    struct Token
    {
        int offset = 0;
        bool value_bit = false;
        bool carry_bit = false;

        bool operator==(const Token &) const = default;
    };

    [[nodiscard]] bool in_range(const Token &token, const ProtocolParams &p) noexcept;

    /// The thirteen variables of one P_PL agent.
    struct AgentState
    {
        bool leader = false;
        bool b = false;
        int dist = 0;
        bool last = false;
        std::optional<Token> token_b;
        std::optional<Token> token_w;
        Mode mode = Mode::Construct;
        int clock = 0;
        int hits = 0;
        int signal_r = 0;
        Bullet bullet = Bullet::None;
        bool shield = false;
        bool signal_b = false;

        [[nodiscard]] std::optional<Token> &token(TokenColor c) noexcept
        {
            return c == TokenColor::Black ? token_b : token_w;
        }
        [[nodiscard]] const std::optional<Token> &token(TokenColor c) const noexcept
        {
            return c == TokenColor::Black ? token_b : token_w;
        }

        bool operator==(const AgentState &) const = default;
    };

    /// True iff every field lies in its declared range for these params.
    [[nodiscard]] bool in_range(const AgentState &agent, const ProtocolParams &p) noexcept;

    [[nodiscard]] inline bool is_border(const AgentState &agent, const ProtocolParams &p) noexcept
    {
        return agent.dist == 0 || agent.dist == p.psi;
    }
}
