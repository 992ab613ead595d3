#pragma once

#include <string>
#include <string_view>

#include "dimforge/dimgroup.hpp"

namespace dimforge {

enum class OutputMode { Text, Structured };

// CLI configuration: flat key=value lines, '#' starts a comment. Keys:
// d, p, s, m1, m2, searchBound, sieveCap, outputMode.
struct Config {
    std::int64_t d = 3, p = 5, s = 6, m1 = 9, m2 = 3;
    long search_bound = 50;
    long sieve_cap = 360;
    OutputMode output_mode = OutputMode::Text;

    // RingParams::make + validate_params; throws on invalid entries.
    DimGroupParams params() const;
};

Config parse_config_text(std::string_view text);        // throws ParseError
Config load_config_file(const std::string& path);       // throws Error on I/O

}  // namespace dimforge
