#pragma once

#include "sqf/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sqf {

struct AcceptanceOptions {
    bool quick = false;    // smaller lattice box, brute d_p at p = 3 only
    bool long_run = false; // adds X = 3 for the identity and p = 7 for d_p
    u64 seed = 20240611;
    int threads = 0;
    std::vector<int> only; // empty runs 1..11
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
// progress callback is invoked after each criterion
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& progress = {});
std::string format_line(const CriterionResult& r);

} // namespace sqf
