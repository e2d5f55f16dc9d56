#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lsieve {

struct CheckResult {
    std::string name;
    bool pass = false;
    double lhs = 0.0;  // headline measured value
    double rhs = 0.0;  // headline bound
    std::string detail;
    double runtime_sec = 0.0;
};

// the acceptance checks in order, every tolerance pinned in code; on_done is
// called after each check completes
std::vector<CheckResult> run_acceptance_suite(
    const std::function<void(const CheckResult&)>& on_done = nullptr);

}  // namespace lsieve
