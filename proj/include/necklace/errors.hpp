#pragma once
#include <stdexcept>
#include <string>

namespace necklace {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the best estimate reached before giving up.
struct AccuracyError : std::runtime_error {
    double estimate;
    double error;
    AccuracyError(const std::string& what, double est, double err)
        : std::runtime_error(what), estimate(est), error(err) {}
};

} // namespace necklace
