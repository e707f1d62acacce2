#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "halfspace/verification.hpp"

namespace hs {

struct SuiteOptions {
    std::uint64_t seed = 42;
    int jobs = 1;
};

/// gegenbauer, kernels, harmonicity, boundary, prop31, prop32, growth, sharpness,
/// expansion, divergence.
const std::vector<std::string>& suite_names();

/// Deferred checks of a suite; throws std::invalid_argument for unknown names.
std::vector<std::function<CheckReport()>> build_suite(const std::string& name, const SuiteOptions& opt);

/// Runs one suite (or "all") and returns reports sorted by name.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace hs
