#pragma once

#include <string>
#include <vector>

namespace qphase {

struct CheckResult {
    std::string name;
    /// Worst observed deviation (or other figure of merit; smaller is better).
    double observed = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Invariant suite behind `qphase validate`: normalization, unitarity,
/// composition, probability conservation, closed-form agreement, and
/// estimator consistency. Every tolerance is multiplied by
/// `tolerance_scale`.
std::vector<CheckResult> run_validation(double tolerance_scale = 1.0);

}  // namespace qphase
