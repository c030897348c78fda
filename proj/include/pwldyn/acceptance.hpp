#pragma once

#include <string>
#include <vector>

namespace pwldyn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

/// Runs the acceptance criteria (all of them, or the listed subset) and
/// returns one result per criterion.  Every check is exact; each criterion
/// also carries a wall-clock budget that is enforced.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

}  // namespace pwldyn
