#pragma once

#include "catqae/harness/report.hpp"

#include <string>
#include <vector>

namespace catqae::harness {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Tolerance checks for one finished report, keyed on its experiment id.
/// Includes the row invariants (disc_error consistency, query parity).
std::vector<CheckResult> check_report(const ExperimentReport& report);

bool all_passed(const std::vector<CheckResult>& checks);

} // namespace catqae::harness
