#include "ppring/snapshot.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ppring
{
    using nlohmann::json;

    ParseError::ParseError(const std::string &message, int line, std::string field)
        : std::runtime_error(
              (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
              (field.empty() ? std::string() : field + ": ") + message),
          line_(line), field_(std::move(field))
    {
    }

    namespace
    {
        json token_to_json(const std::optional<Token> &t)
        {
            if (!t)
                return nullptr;
            return json::array({t->offset, t->value_bit ? 1 : 0, t->carry_bit ? 1 : 0});
        }

        class Reader
        {
        public:
            explicit Reader(const std::string &text) : text_(text) {}

            [[noreturn]] void fail(const std::string &field, const std::string &message) const
            {
                throw ParseError(message, line_of(field), field);
            }

            // Best-effort line lookup: the line holding the n-th agent object.
            int line_of(const std::string &field) const
            {
                const auto open = field.find('[');
                if (field.rfind("agents[", 0) != 0 || open == std::string::npos)
                    return top_line(field);
                const int index = std::stoi(field.substr(open + 1));
                const auto agents = text_.find("\"agents\"");
                if (agents == std::string::npos)
                    return 0;
                std::size_t pos = text_.find('[', agents);
                int depth = 0;
                int seen = -1;
                for (; pos < text_.size(); ++pos)
                {
                    const char c = text_[pos];
                    if (c == '{' || c == '[')
                    {
                        if (c == '{' && depth == 1 && ++seen == index)
                            return line_at(pos);
                        ++depth;
                    }
                    else if (c == '}' || c == ']')
                    {
                        --depth;
                    }
                }
                return 0;
            }

            int top_line(const std::string &field) const
            {
                const auto pos = text_.find("\"" + field + "\"");
                return pos == std::string::npos ? 0 : line_at(pos);
            }

            int line_at(std::size_t pos) const
            {
                return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
            }

            int integer(const json &obj, const std::string &key, const std::string &path, int lo, int hi) const
            {
                const auto it = obj.find(key);
                if (it == obj.end())
                    fail(path, "missing field");
                if (!it->is_number_integer())
                    fail(path, "expected an integer");
                const auto v = it->get<long long>();
                if (v < lo || v > hi)
                    fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
                return static_cast<int>(v);
            }

            bool bit(const json &obj, const std::string &key, const std::string &path) const
            {
                const auto it = obj.find(key);
                if (it == obj.end())
                    fail(path, "missing field");
                if (it->is_boolean())
                    return it->get<bool>();
                return integer(obj, key, path, 0, 1) == 1;
            }

            std::optional<Token> token(const json &obj, const std::string &key, const std::string &path,
                                       const ProtocolParams &p) const
            {
                const auto it = obj.find(key);
                if (it == obj.end())
                    fail(path, "missing field");
                if (it->is_null())
                    return std::nullopt;
                if (!it->is_array() || it->size() != 3)
                    fail(path, "expected null or [offset, value, carry]");
                const json wrapped = {{"offset", (*it)[0]}, {"value", (*it)[1]}, {"carry", (*it)[2]}};
                Token t;
                t.offset = integer(wrapped, "offset", path + "[0]", 1 - p.psi, p.psi);
                if (t.offset == 0)
                    fail(path + "[0]", "offset 0 is not a token position");
                t.value_bit = bit(wrapped, "value", path + "[1]");
                t.carry_bit = bit(wrapped, "carry", path + "[2]");
                return t;
            }

        private:
            const std::string &text_;
        };
    }

    std::string dump_config(const Configuration &config)
    {
        json agents = json::array();
        for (const auto &a : config.agents)
        {
            agents.push_back({
                {"leader", a.leader ? 1 : 0},
                {"b", a.b ? 1 : 0},
                {"dist", a.dist},
                {"last", a.last ? 1 : 0},
                {"token_b", token_to_json(a.token_b)},
                {"token_w", token_to_json(a.token_w)},
                {"mode", a.mode == Mode::Detect ? "Detect" : "Construct"},
                {"clock", a.clock},
                {"hits", a.hits},
                {"signal_r", a.signal_r},
                {"bullet", static_cast<int>(a.bullet)},
                {"shield", a.shield ? 1 : 0},
                {"signal_b", a.signal_b ? 1 : 0},
            });
        }
        const json doc = {
            {"n", config.params.n},
            {"psi", config.params.psi},
            {"kappa_max", config.params.kappa_max},
            {"agents", std::move(agents)},
        };
        // one agent per line keeps diffs and diagnostics readable
        std::ostringstream out;
        out << "{\n  \"n\": " << config.params.n << ",\n  \"psi\": " << config.params.psi
            << ",\n  \"kappa_max\": " << config.params.kappa_max << ",\n  \"agents\": [";
        for (std::size_t i = 0; i < doc["agents"].size(); ++i)
            out << (i == 0 ? "\n    " : ",\n    ") << doc["agents"][i].dump();
        out << "\n  ]\n}\n";
        return out.str();
    }

    Configuration load_config(const std::string &text)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
            const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
            throw ParseError("malformed JSON (" + std::string(e.what()) + ")", line, "");
        }

        const Reader rd(text);
        if (!doc.is_object())
            rd.fail("", "snapshot must be a JSON object");

        const int n = rd.integer(doc, "n", "n", 2, 1 << 24);
        const int psi = rd.integer(doc, "psi", "psi", 2, kMaxPsi);
        const int kappa = rd.integer(doc, "kappa_max", "kappa_max", 1, 1 << 30);
        ProtocolParams params;
        try
        {
            params = make_params(n, psi, kappa);
        }
        catch (const InvalidParams &e)
        {
            rd.fail("n", e.what());
        }

        const auto agents = doc.find("agents");
        if (agents == doc.end() || !agents->is_array())
            rd.fail("agents", "expected an array of agents");
        if (static_cast<int>(agents->size()) != n)
            rd.fail("agents", "expected " + std::to_string(n) + " agents, found " + std::to_string(agents->size()));

        Configuration config = blank_configuration(params);
        for (int i = 0; i < n; ++i)
        {
            const json &obj = (*agents)[static_cast<std::size_t>(i)];
            const std::string at = "agents[" + std::to_string(i) + "]";
            if (!obj.is_object())
                rd.fail(at, "expected an object");
            auto &a = config.at(i);
            a.leader = rd.bit(obj, "leader", at + ".leader");
            a.b = rd.bit(obj, "b", at + ".b");
            a.dist = rd.integer(obj, "dist", at + ".dist", 0, params.two_psi() - 1);
            a.last = rd.bit(obj, "last", at + ".last");
            a.token_b = rd.token(obj, "token_b", at + ".token_b", params);
            a.token_w = rd.token(obj, "token_w", at + ".token_w", params);

            const auto mode = obj.find("mode");
            if (mode == obj.end() || !mode->is_string())
                rd.fail(at + ".mode", "expected \"Detect\" or \"Construct\"");
            if (*mode == "Detect")
                a.mode = Mode::Detect;
            else if (*mode == "Construct")
                a.mode = Mode::Construct;
            else
                rd.fail(at + ".mode", "expected \"Detect\" or \"Construct\"");

            a.clock = rd.integer(obj, "clock", at + ".clock", 0, params.kappa_max);
            a.hits = rd.integer(obj, "hits", at + ".hits", 0, params.psi);
            a.signal_r = rd.integer(obj, "signal_r", at + ".signal_r", 0, params.kappa_max);
            a.bullet = static_cast<Bullet>(rd.integer(obj, "bullet", at + ".bullet", 0, 2));
            a.shield = rd.bit(obj, "shield", at + ".shield");
            a.signal_b = rd.bit(obj, "signal_b", at + ".signal_b");
        }
        return config;
    }

    void write_config(const Configuration &config, const std::filesystem::path &path)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << dump_config(config);
        if (!out)
            throw std::runtime_error("failed writing " + path.string());
    }

    Configuration read_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_config(buf.str());
    }
}
