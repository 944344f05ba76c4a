#pragma once

#include <string>
#include <vector>

namespace fgsense {

struct CheckResult {
    std::string name;
    bool passed;
    std::string observed;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Named invariant batteries: "fields", "small-geometries", "bounds-chain",
/// "oracle", "paper-values". Throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name);

const std::vector<std::string>& suite_names();

std::string render(const SuiteReport& report);

}  // namespace fgsense
