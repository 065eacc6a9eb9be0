// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. `--seed N` and `--threads T` override the defaults.
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "eggdomain/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 1729;
    int threads = 1;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);
        if (std::strcmp(argv[i], "--threads") == 0) threads = std::atoi(argv[i + 1]);
    }

    auto report = eggdomain::run_acceptance(std::cout, seed, threads);
    int failed = 0;
    for (const auto& c : report.criteria) failed += !c.passed;
    if (failed > 0) {
        std::cout << failed << " of " << report.criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << report.criteria.size() << " criteria passed\n";
    return 0;
}
