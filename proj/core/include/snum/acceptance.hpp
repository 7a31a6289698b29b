#pragma once

#include "snum/scalar.hpp"
#include "snum/snumbers.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace snum {

struct AcceptanceConfig {
    ArithmeticMode mode = ArithmeticMode::exact;
    // Absolute tolerance for value checks that are exact in exact mode.
    double float_tolerance = 1e-12;
    std::uint64_t seed = 0;
    // Swap two entries of one Hilbert table before the structure checks.
    bool corrupt_hilbert = false;
    // Criteria to run (1..10); empty runs all.
    std::vector<int> only;
};

struct CriterionResult {
    int id = 0;
    std::string key;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

std::size_t acceptance_criterion_count();
std::string acceptance_key(int id);

// Runs the criteria in order; on_result is called as each one finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  1 isomorphism-1d (0.01 s / 1 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace snum
