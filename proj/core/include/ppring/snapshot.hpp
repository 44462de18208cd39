#pragma once

#include "ppring/configuration.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace ppring
{
    /// Malformed snapshot. line is 1-based (0 when unknown); field is a JSON path
    /// such as "agents[3].dist" (empty for syntax errors).
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string &message, int line, std::string field);

        [[nodiscard]] int line() const noexcept { return line_; }
        [[nodiscard]] const std::string &field() const noexcept { return field_; }

    private:
        int line_;
        std::string field_;
    };

    /// JSON text {n, psi, kappa_max, agents: [...]}; tokens are null or [offset, value, carry].
    std::string dump_config(const Configuration &config);

    /// Inverse of dump_config. Validates every field against the parameters.
    Configuration load_config(const std::string &text);

    void write_config(const Configuration &config, const std::filesystem::path &path);
    Configuration read_config(const std::filesystem::path &path);
}
