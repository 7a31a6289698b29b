#include "snum/acceptance.hpp"

#include <iostream>

int main()
{
    snum::AcceptanceConfig config;
    bool ok = true;
    snum::run_acceptance(config, [&](const snum::CriterionResult& r) {
        ok = ok && r.passed;
        std::cout << snum::format_result(r) << std::endl;
    });
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
    return ok ? 0 : 1;
}
