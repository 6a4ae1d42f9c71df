#include "necklace/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv)
{
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const auto results = necklace::run_acceptance(quick, &std::cerr);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << necklace::format_result_line(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
