#pragma once

#include <cstdint>

#include "lagmin/recipe.hpp"

namespace lagmin {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured quantities, stable formatting
};

// Runs the full certification suite.  The seed drives the randomized
// point sampling (criteria with random probes); everything else is
// deterministic, so a fixed seed reproduces the summary byte for byte.
std::vector<CriterionResult> run_acceptance(uint64_t seed = 1);

// One line per criterion plus a trailing verdict line.
std::string acceptance_summary(const std::vector<CriterionResult>& results);

bool acceptance_all_pass(const std::vector<CriterionResult>& results);

}  // namespace lagmin
