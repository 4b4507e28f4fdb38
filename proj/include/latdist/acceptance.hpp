#pragma once

#include <functional>
#include <string>
#include <vector>

namespace latdist::acceptance {

enum class Suite { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured; // human-readable measured values
    double seconds = 0;
};

/// Criteria ids in a suite. Fast holds the sub-minute exact checks; Full holds
/// all twelve.
std::vector<int> suite_criteria(Suite suite);

/// Runs one criterion. Unknown ids throw ValidationError.
CriterionResult run_criterion(int id, unsigned threads = 1);

std::vector<CriterionResult> run_suite(Suite suite, unsigned threads = 1,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

} // namespace latdist::acceptance
