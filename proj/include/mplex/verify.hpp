#pragma once

// Regression and property suites behind `mplex verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace mplex {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
};

std::vector<CheckResult> check_oscillating_pair();
std::vector<CheckResult> check_degree_mismatch_pair();
std::vector<CheckResult> check_circulant_pair();
std::vector<CheckResult> check_noninterpolating_pair();

struct BoundsSuiteOptions {
    std::size_t instances = 200;
    std::size_t n_min = 4;
    std::size_t n_max = 20;
    std::uint64_t seed = 20240611;
};

/// One check per property, each counting violations over all instances.
std::vector<CheckResult> check_random_bounds(const BoundsSuiteOptions& options = {});

/// Exact shift identity on random primitive pairs (n <= 10) plus the 2-state closed form.
std::vector<CheckResult> check_stationary_shift(std::size_t pairs = 100, std::uint64_t seed = 77);

/// Shrinking-family scalings for the alpha, perturbation and period stability results.
std::vector<CheckResult> check_stability_scalings();

/// "examples", "bounds" or "perturbation"; throws InvalidArgument otherwise.
SuiteReport run_suite(const std::string& name);

}  // namespace mplex
