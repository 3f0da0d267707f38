#pragma once

#include <string>
#include <vector>

namespace fracns::cli {

struct SuiteResult {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// Numerical audit suites behind `fracns verify`:
///   specfun     special-function identities and quadrature oracles
///   operators   diagonal symbols vs contour quadrature; bound constants
///   bilinear    advective-estimate constants on random fields
///   regularity  Holder-exponent calibration and trajectory exponents
/// Each writes per-check CSV reports into `output_dir`.
SuiteResult run_suite_specfun(const std::string& output_dir);
SuiteResult run_suite_operators(const std::string& output_dir);
SuiteResult run_suite_bilinear(const std::string& output_dir, unsigned long long seed);
SuiteResult run_suite_regularity(const std::string& output_dir);

std::vector<SuiteResult> run_suites(const std::string& which, const std::string& output_dir,
                                    unsigned long long seed);

} // namespace fracns::cli
