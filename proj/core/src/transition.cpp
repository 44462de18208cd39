#include "ppring/transition.hpp"

#include <algorithm>

namespace ppring
{
    namespace
    {
        void become_leader(AgentState &v) noexcept
        {
            v.leader = true;
            v.bullet = Bullet::Live;
            v.shield = true;
            v.signal_b = false;
        }

        int mod(int x, int m) noexcept { return ((x % m) + m) % m; }
    }

    bool invalid_token(const AgentState &v, TokenColor color, const ProtocolParams &p) noexcept
    {
        const auto &token = v.token(color);
        if (!token)
            return false;
        const int target = mod(v.dist + token->offset + token_base(color, p), p.two_psi());
        if (token->offset > 0)
            return target < p.psi;
        return target < 1 || target > p.psi - 1;
    }

    void determine_mode_in_place(AgentState &l, AgentState &r, const ProtocolParams &p)
    {
        if (l.leader)
            l.signal_r = p.kappa_max;
        l.hits = 0;
        r.hits = std::min(r.hits + 1, p.psi);
        if (l.signal_r > 0 || r.signal_r > 0)
        {
            l.clock = 0;
            r.clock = 0;
            // the left signal absorbs the right one
            if (l.signal_r >= r.signal_r && r.signal_r > 0)
                r.hits = 0;
            r.signal_r = std::max(l.signal_r, r.signal_r);
            l.signal_r = 0;
            if (r.hits == p.psi)
            {
                r.signal_r -= 1;
                r.hits = 0;
            }
        }
        else if (r.hits == p.psi)
        {
            r.clock = std::min(r.clock + 1, p.kappa_max);
            r.hits = 0;
        }
        l.mode = l.clock == p.kappa_max ? Mode::Detect : Mode::Construct;
        r.mode = r.clock == p.kappa_max ? Mode::Detect : Mode::Construct;
    }

    void create_leader_diststep_in_place(AgentState &l, AgentState &r, const ProtocolParams &p)
    {
        const int tmp = r.leader ? 0 : (l.dist + 1) % p.two_psi();
        if (r.mode == Mode::Detect && tmp != r.dist)
            become_leader(r);
        if (r.mode == Mode::Construct)
            r.dist = tmp;
        if (r.leader)
            l.last = true;
        else if (is_border(r, p))
            l.last = false;
        else
            l.last = r.last;
    }

    void move_token_in_place(AgentState &l, AgentState &r, TokenColor color, const ProtocolParams &p,
                             TokenTrace *trace)
    {
        TokenTrace local;
        TokenTrace &t = trace ? *trace : local;
        t = TokenTrace{};

        auto &lt = l.token(color);
        auto &rt = r.token(color);
        const int psi = p.psi;

        if (l.dist == token_base(color, p) && !l.last && !lt)
        {
            lt = Token{psi, !l.b, l.b};
            t.born = true;
        }
        if (lt && (rt || r.last))
        {
            lt.reset();
            t.collided = true;
        }

        if (lt && lt->offset == 1)
        {
            // reached the right target
            if (r.mode == Mode::Detect && lt->value_bit != r.b)
                become_leader(r);
            else if (r.mode == Mode::Construct)
                r.b = lt->value_bit;
            rt = Token{1 - psi, lt->value_bit, lt->carry_bit};
            lt.reset();
            t.move = TokenTrace::Move::Right;
        }
        else if (lt && lt->offset >= 2)
        {
            rt = Token{lt->offset - 1, lt->value_bit, lt->carry_bit};
            lt.reset();
            t.move = TokenTrace::Move::Right;
        }
        else if (rt && rt->offset == -1)
        {
            // reached the left target: fold in l.b and the carry, start the next round
            lt = rt->carry_bit ? Token{psi, !l.b, l.b} : Token{psi, l.b, false};
            rt.reset();
            t.move = TokenTrace::Move::Left;
        }
        else if (rt && rt->offset <= -2)
        {
            lt = Token{rt->offset + 1, rt->value_bit, rt->carry_bit};
            rt.reset();
            t.move = TokenTrace::Move::Left;
        }

        if (lt && (l.last || invalid_token(l, color, p)))
        {
            lt.reset();
            t.swept_l = true;
        }
        if (rt && (r.last || invalid_token(r, color, p)))
        {
            rt.reset();
            t.swept_r = true;
        }
    }

    void eliminate_leaders_in_place(AgentState &l, AgentState &r)
    {
        if (l.leader && l.signal_b)
        {
            l.bullet = Bullet::Live;
            l.shield = true;
            l.signal_b = false;
        }
        if (r.leader && r.signal_b)
        {
            r.bullet = Bullet::Dummy;
            r.shield = false;
            r.signal_b = false;
        }
        if (l.bullet != Bullet::None && r.leader)
        {
            if (l.bullet == Bullet::Live && !r.shield)
                r.leader = false;
            l.bullet = Bullet::None;
        }
        else if (l.bullet != Bullet::None && !r.leader)
        {
            if (r.bullet == Bullet::None)
                r.bullet = l.bullet;
            l.bullet = Bullet::None;
            r.signal_b = false;
        }
        l.signal_b = l.signal_b || r.signal_b || r.leader;
    }

    void interact_ppl_in_place(AgentState &l, AgentState &r, const ProtocolParams &p, TokenTrace *black,
                               TokenTrace *white)
    {
        determine_mode_in_place(l, r, p);
        create_leader_diststep_in_place(l, r, p);
        move_token_in_place(l, r, TokenColor::Black, p, black);
        move_token_in_place(l, r, TokenColor::White, p, white);
        eliminate_leaders_in_place(l, r);
    }

    AgentPair interact_ppl(const AgentState &l, const AgentState &r, const ProtocolParams &p)
    {
        AgentPair out{l, r};
        interact_ppl_in_place(out.l, out.r, p);
        return out;
    }

    AgentPair determine_mode(AgentState l, AgentState r, const ProtocolParams &p)
    {
        determine_mode_in_place(l, r, p);
        return {std::move(l), std::move(r)};
    }

    AgentPair create_leader_diststep(AgentState l, AgentState r, const ProtocolParams &p)
    {
        create_leader_diststep_in_place(l, r, p);
        return {std::move(l), std::move(r)};
    }

    AgentPair move_token(AgentState l, AgentState r, TokenColor color, const ProtocolParams &p)
    {
        move_token_in_place(l, r, color, p);
        return {std::move(l), std::move(r)};
    }

    AgentPair eliminate_leaders(AgentState l, AgentState r)
    {
        eliminate_leaders_in_place(l, r);
        return {std::move(l), std::move(r)};
    }
}
