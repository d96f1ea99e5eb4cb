#pragma once

#include <string>
#include <vector>

#include "ccsim/bounds.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

// Pass/fail uses slack >= -1e-9 to absorb double rounding.
inline constexpr double kGapSlackTolerance = -1e-9;

struct GapCheck {
    std::string name;
    double slack = 0;
    bool pass = false;
    bool enforced = false;  // informational checks (boundary cases) stay false
};

struct GapReport {
    NetworkConfig config;
    RegimeLabel label;
    std::vector<char> cases;  // every matching case; >1 entry on shared boundaries
    BoundSet bounds;
    CaseConstants r1_constants;  // constants of label.case_id
    CaseConstants r2_constants;
    std::vector<GapCheck> checks;

    const GapCheck* find(const std::string& name) const;
    bool enforced_pass() const;  // all enforced checks pass
};

// Evaluates at one (M1, M2) point:
//  - theorem1_r1:  r1_lb >= r1_ub/48 - 4          (enforced)
//  - theorem1_r2:  r2_lb >= r2_ub/20 - 4          (enforced; implies the /48 form)
//  - theorem1_r2_48: the published /48 form       (reported)
//  - envelope_r1/r2: hybrid(alpha*,beta*) <= ub   (enforced)
//  - case_r1[X]: r1_lb >= mult*r1_ub - add per matching case
//  - case_r2:    the second-layer case inequality
// Case checks are enforced only at case-interior points; on shared
// boundaries they are evaluated against every adjacent case and reported.
// Throws NotGapEligible when N < K1*K2.
GapReport check_point(const ValidatedConfig&);

struct SweepSummary {
    int points = 0;
    int theorem_failures = 0;
    int case_failures = 0;                // enforced case checks only
    int informational_case_failures = 0;  // boundary-point case checks
    int envelope_failures = 0;
    double min_slack_theorem_r1 = 0, worst_r1_m1 = 0, worst_r1_m2 = 0;
    double min_slack_theorem_r2 = 0, worst_r2_m1 = 0, worst_r2_m2 = 0;
    double min_slack_case_r1 = 0;

    bool clean() const {
        return theorem_failures == 0 && case_failures == 0 && envelope_failures == 0;
    }
};

struct SweepResult {
    std::vector<GapReport> reports;  // grid order: M1 outer, M2 inner
    SweepSummary summary;
};

// check_point over a uniform grid of (M1, M2) in [0, N]^2 with `grid` points
// per axis (grid 1 evaluates the single point (0, 0)). Deterministic report
// order regardless of thread count; threads <= 0 picks a default.
SweepResult sweep(const NetworkConfig& shape, int grid, int threads = 0);

}  // namespace ccsim
