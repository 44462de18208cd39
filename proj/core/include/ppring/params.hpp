#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ppring
{
    /// Raised for protocol parameters that violate a sizing invariant.
    class InvalidParams : public std::invalid_argument
    {
    public:
        explicit InvalidParams(const std::string &what) : std::invalid_argument(what) {}
    };

    /// Sizing of one P_PL population. Every other module reads its bounds from here.
    ///
    ///   psi        knowledge of the population size, 2^psi >= n, psi >= 2
    ///   kappa_max  clock ceiling, at least 32 * psi
    ///   zeta       number of segments, ceil(n / psi)
    struct ProtocolParams
    {
        int n = 0;
        int psi = 0;
        int kappa_max = 0;
        int zeta = 0;

        [[nodiscard]] int two_psi() const noexcept { return 2 * psi; }

        bool operator==(const ProtocolParams &) const = default;
    };

    inline constexpr int kKappaFactor = 32;
    inline constexpr int kMaxPsi = 30;

    /// Smallest k with 2^k >= x (x >= 1).
    int ceil_log2(std::uint64_t x);

    /// psi = max(2, ceil(log2 n)), kappa_max = 32 psi unless overridden upward.
    ProtocolParams make_params(int n, std::optional<int> kappa_max = std::nullopt);

    /// Explicit sizing, validated. Used when a test needs a psi larger than the minimum.
    ProtocolParams make_params(int n, int psi, int kappa_max);

    /// Throws InvalidParams naming the first violated invariant.
    void validate(const ProtocolParams &params);
}
