#include "ppring/params.hpp"

#include <algorithm>

namespace ppring
{
    int ceil_log2(std::uint64_t x)
    {
        int k = 0;
        while ((std::uint64_t{1} << k) < x)
        {
            ++k;
        }
        return k;
    }

    ProtocolParams make_params(int n, std::optional<int> kappa_max)
    {
        if (n < 2)
        {
            throw InvalidParams("population size must be at least 2, got " + std::to_string(n));
        }
        const int psi = std::max(2, ceil_log2(static_cast<std::uint64_t>(n)));
        return make_params(n, psi, kappa_max.value_or(kKappaFactor * psi));
    }

    ProtocolParams make_params(int n, int psi, int kappa_max)
    {
        ProtocolParams p;
        p.n = n;
        p.psi = psi;
        p.kappa_max = kappa_max;
        p.zeta = psi > 0 ? (n + psi - 1) / psi : 0;
        validate(p);
        return p;
    }

    void validate(const ProtocolParams &p)
    {
        if (p.n < 2)
        {
            throw InvalidParams("population size must be at least 2, got " + std::to_string(p.n));
        }
        if (p.psi < 2)
        {
            throw InvalidParams("psi must be at least 2, got " + std::to_string(p.psi));
        }
        if (p.psi > kMaxPsi)
        {
            throw InvalidParams("psi must be at most " + std::to_string(kMaxPsi));
        }
        if ((std::int64_t{1} << p.psi) < p.n)
        {
            throw InvalidParams("2^psi must be at least n (psi=" + std::to_string(p.psi) +
                                ", n=" + std::to_string(p.n) + ")");
        }
        if (p.kappa_max < kKappaFactor * p.psi)
        {
            throw InvalidParams("kappa_max must be at least 32*psi=" + std::to_string(kKappaFactor * p.psi) +
                                ", got " + std::to_string(p.kappa_max));
        }
        if (p.zeta != (p.n + p.psi - 1) / p.psi)
        {
            throw InvalidParams("zeta must equal ceil(n/psi)");
        }
    }
}
