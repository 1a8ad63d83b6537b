#ifndef WEYL_VERIFY_HPP
#define WEYL_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "weyl/polynomial.hpp"

namespace weyl
{

// Cross-oracle suites: every suite compares two independent routes to the same quantity and
// fails when they differ or when it runs over its time budget.
struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    // Random symbols in the power and three-form batteries.
    int battery = 20;
};

/// Suite names in their fixed reporting order.
const std::vector<std::string> &suite_names();
/// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string &name, const VerifyOptions &options = {});
std::vector<SuiteResult> run_all(const VerifyOptions &options = {});

/// Random real symbol on T*R^N: a few monomials of degree 1..max_degree (at least one of degree
/// >= 2) with small rational coefficients.
Polynomial random_symbol(std::mt19937_64 &rng, int n, int max_degree);

} // namespace weyl

#endif
