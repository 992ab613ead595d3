#include "dimforge/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dimforge {

DimGroupParams Config::params() const { return make_params(d, p, s, m1, m2); }

namespace {

std::string trim(std::string_view v) {
    size_t a = 0, b = v.size();
    while (a < b && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
    return std::string(v.substr(a, b - a));
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config: " + key + " needs an integer, got '" + value + "'");
    }
}

}  // namespace

Config parse_config_text(std::string_view text) {
    Config cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key == "d") {
            cfg.d = to_int(key, value);
        } else if (key == "p") {
            cfg.p = to_int(key, value);
        } else if (key == "s") {
            cfg.s = to_int(key, value);
        } else if (key == "m1") {
            cfg.m1 = to_int(key, value);
        } else if (key == "m2") {
            cfg.m2 = to_int(key, value);
        } else if (key == "searchBound") {
            cfg.search_bound = to_int(key, value);
            if (cfg.search_bound < 1) throw ParseError("config: searchBound must be positive");
        } else if (key == "sieveCap") {
            cfg.sieve_cap = to_int(key, value);
            if (cfg.sieve_cap < 2) throw ParseError("config: sieveCap must be at least 2");
        } else if (key == "outputMode") {
            if (value == "text") {
                cfg.output_mode = OutputMode::Text;
            } else if (value == "structured") {
                cfg.output_mode = OutputMode::Structured;
            } else {
                throw ParseError("config: outputMode must be text or structured, got '" + value +
                                 "'");
            }
        } else {
            throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "'");
        }
    }
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace dimforge
