#pragma once
#include <optional>
#include <string>

namespace necklace {

// A numeric value with an optional out-of-regime warning.
struct Estimate {
    double value = 0;
    std::optional<std::string> warning;
};

} // namespace necklace
