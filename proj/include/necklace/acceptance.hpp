#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace necklace {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs acceptance criteria 1..10. quick trims sample counts and skips the
// resolution-doubling and K = 256 stages.
std::vector<CriterionResult> run_acceptance(bool quick, std::ostream* progress = nullptr);

std::string format_result_line(const CriterionResult& r);

} // namespace necklace
