#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hmf/hecke.hpp"

namespace hmf {

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    // Corrupt one coefficient before the admissibility check (fault injection).
    bool corrupt = false;
};

struct Criterion {
    int id;
    std::string name;
    std::vector<long> fields;   // discriminant parameters D exercised
    std::function<SuiteReport(const SuiteOptions&)> run;
};

// The twelve acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

// Runs one criterion, turning exceptions into a failing report.
SuiteReport run_criterion(const Criterion& c, const SuiteOptions& opt);

}  // namespace hmf
