#pragma once

// Acceptance suite: the checks that define "working" for this simulator.
// Each criterion reports pass/fail plus the measured numbers; exceptions
// inside a criterion are caught and reported as failures, so the suite
// always produces a full report.

#include <iosfwd>
#include <string>
#include <vector>

#include "catsim/sweep.hpp"

namespace catsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured values / failure diagnostics
};

// runs every criterion (tens of seconds); never throws
std::vector<CriterionResult> run_acceptance();

// one line per criterion ("c01 PASS name :: detail"); returns all-passed
bool print_acceptance(std::ostream& os,
                      const std::vector<CriterionResult>& results);

}  // namespace catsim
