#pragma once

// Plain-text outputs (CSV tables) and the flat key-value configuration file.

#include <fmt/format.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qsl::io {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != header.size()) throw std::invalid_argument("Table::add_row: column count mismatch");
        rows.push_back(std::move(row));
    }

    std::size_t column(const std::string& name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::out_of_range("Table: no column " + name);
    }

    double number(std::size_t row, const std::string& name) const
    {
        const Cell& c = rows.at(row).at(column(name));
        if (const auto* d = std::get_if<double>(&c)) return *d;
        if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
        throw std::invalid_argument("Table: column " + name + " is not numeric");
    }

    std::string to_csv() const
    {
        std::string out;
        const auto join = [&](const auto& cells, auto&& render) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += render(cells[i]);
            }
            out += '\n';
        };
        join(header, [](const std::string& h) { return h; });
        for (const auto& row : rows) {
            join(row, [](const Cell& c) {
                return std::visit(
                    [](const auto& v) -> std::string {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>)
                            return format_number(v);
                        else if constexpr (std::is_same_v<T, std::int64_t>)
                            return std::to_string(v);
                        else
                            return v;
                    },
                    c);
            });
        }
        return out;
    }
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{"m", "omega", "q", "E_field", "lambda"};
    return keys;
}

inline double parse_double(const std::string& text, const std::string& key)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError("config key '" + key + "': trailing characters in '" + text + "'");
    return v;
}

/// Parses `key = value` (or `key: value`) lines. Blank lines and `#` comments are
/// ignored; unknown keys and duplicates are errors.
inline std::map<std::string, double> parse_config(std::istream& in)
{
    std::map<std::string, double> values;
    std::string line;
    int lineno = 0;
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto sep = line.find('=');
        if (sep == std::string::npos) sep = line.find(':');
        if (sep == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, sep));
        const std::string value = trim(line.substr(sep + 1));
        bool known = false;
        for (const auto& k : config_keys()) known = known || k == key;
        if (!known) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (values.contains(key)) throw ConfigError("config key '" + key + "' given twice");
        values[key] = parse_double(value, key);
    }
    return values;
}

inline std::map<std::string, double> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace qsl::io
