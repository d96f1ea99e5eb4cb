#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

// Runs the full desk-scale verification battery: closed-form reproduction,
// the exact scheme identities, decode trials, simulation-to-formula
// convergence, the gap certification sweeps, the bound-scan cross check,
// and the envelope audit.
std::vector<CriterionResult> run_acceptance();

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int run_acceptance_report(std::ostream& os);

}  // namespace ccsim
