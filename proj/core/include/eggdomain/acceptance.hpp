#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eggdomain {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_passed() const;
};

/// Runs the full acceptance suite and prints one pass/fail line per criterion
/// to `log` as it completes. `seed` drives the Monte-Carlo criteria; `threads`
/// shards them deterministically.
AcceptanceReport run_acceptance(std::ostream& log, std::uint64_t seed = 1729, int threads = 1);

} // namespace eggdomain
