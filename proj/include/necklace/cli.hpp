#pragma once
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace necklace {

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;
    std::string output;  // empty: stdout
    std::string format = "csv";
    std::uint64_t seed = 1;
};

// Exit codes: 0 success, 1 failed verification, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Reads key=value lines; '#' starts a comment. Throws on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

} // namespace necklace
