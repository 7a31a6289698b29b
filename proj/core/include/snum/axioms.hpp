#pragma once

#include "snum/snumbers.hpp"

#include <map>
#include <string>
#include <vector>

namespace snum {

struct AxiomViolation {
    std::string rule;
    std::string detail;
};

struct AxiomReport {
    bool ok = true;
    std::size_t checks = 0;
    std::vector<AxiomViolation> violations;
};

// Consistency of certified bounds sharing an operator label:
//   lower <= upper, lower <= ||T|| when the norm is known,
//   a certified upper at n = 1 is at least ||T||,
//   i_n <= s_m and s_n <= a_m for every kind s and n >= m,
//   b_n <= max(c_m, d_m) for n >= m.
// Uncertified and inconclusive bounds are ignored. `norms` maps operator labels to ||T||.
AxiomReport snumber_axiom_suite(const std::vector<SNumberBound>& bounds, const std::map<std::string, double>& norms = {},
                                double tol = 1e-9);

}  // namespace snum
