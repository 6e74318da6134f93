#pragma once

#include <string>
#include <vector>

namespace harmjet {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Module-level invariant suites at desk-scale parameters; the acceptance
// binary runs the full sweeps. Returns one result per named invariant.
std::vector<CheckResult> run_selfchecks();

}  // namespace harmjet
